class CapacityError(Exception):
    """An operation exceeded a configured or provable size limit."""
