# Utils package
from .utils import log_snapshot, parse_level

__all__ = ['log_snapshot', 'parse_level']
