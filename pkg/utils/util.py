import json
import os
import tempfile
from collections import OrderedDict
from pathlib import Path

FLOAT_FORMAT = '%.17g'
TABLE_FORMATS = ('csv', 'json')


def get_project_root() -> Path:
    return Path(__file__).parent.parent


def read_json(path_to_file):
    file_path = Path(path_to_file)
    with file_path.open('rt') as handle:
        return json.load(handle, object_hook=OrderedDict)


def write_json(content, path_to_file):
    file_path = Path(path_to_file)
    with file_path.open('wt') as handle:
        json.dump(content, handle, indent=4, sort_keys=False)


def _stage(text, file_path):
    """Write text to a hidden temporary file next to file_path and return its name"""
    fd, tmp_name = tempfile.mkstemp(dir=file_path.parent, prefix='.' + file_path.name, suffix='.tmp')
    try:
        with os.fdopen(fd, 'wt', encoding='utf8', newline='') as handle:
            handle.write(text)
    except BaseException:
        os.remove(tmp_name)
        raise
    return tmp_name


def table_to_text(df, fmt):
    """
    CSV: one header line, floats with 17 significant digits.
    JSON: object mapping each column name to the array of its values.
    """
    if fmt == 'csv':
        return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    if fmt == 'json':
        return json.dumps({str(col): df[col].tolist() for col in df.columns}, indent=1) + '\n'
    raise ValueError("Unknown table format '{}', expected one of {}".format(fmt, TABLE_FORMATS))


def write_tables(tables, out_dir, fmt='csv'):
    """
    Write every table to <out_dir>/<stem>.<fmt>.
    All tables are rendered and staged before the first rename, so a failure leaves none of them behind.

    :param tables: dict mapping file stem to pandas DataFrame
    :return: paths of the written files, in the order of tables
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for stem, df in tables.items():
            file_path = out_dir / '{}.{}'.format(stem, fmt)
            staged.append((_stage(table_to_text(df, fmt), file_path), file_path))
        for tmp_name, file_path in staged:
            os.replace(tmp_name, file_path)
    except BaseException:
        for tmp_name, _ in staged:
            if os.path.exists(tmp_name):
                os.remove(tmp_name)
        raise
    return [file_path for _, file_path in staged]
