from functools import lru_cache

from grasscode.field import make_field
from grasscode.sections import enumerate_variety, parse_variety_spec


@lru_cache(maxsize=None)
def field(p, e=1):
    return make_field(p, e)


@lru_cache(maxsize=None)
def variety(spec_str, p, e=1):
    """Cached enumeration; callers must treat the result as read-only."""
    return enumerate_variety(parse_variety_spec(spec_str), field(p, e))
