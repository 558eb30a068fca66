from .regions import *
from .figures import *
from .bounds_table import *
from .verify import *
from .max_search import *

EXPERIMENTS = {
    'regions': Regions,
    'fig3a': Fig3a,
    'fig3b': Fig3b,
    'bounds-table': BoundsTable,
    'verify': Verify,
    'max-search': MaxSearch,
}
