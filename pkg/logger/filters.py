import logging


class FilterTrialRecords(logging.Filter):
    """Keeps per-trial records (those logged with extra={'trial': ...}) out of a handler"""

    def filter(self, record):
        return not hasattr(record, 'trial')
