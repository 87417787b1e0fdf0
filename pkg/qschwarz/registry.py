from fractions import Fraction
from threading import Lock
from typing import TYPE_CHECKING, Callable, Dict, List, Optional, Tuple

if TYPE_CHECKING:
    from qschwarz.qseries import QSeries

FormKey = Tuple[str, Fraction]


class FormRegistry:
    """Process-wide memo of constructed form expansions.

    Keys are ``(form id, order)``; a form's grid is fixed by its id, so
    the order alone pins the expansion. Values are immutable, so handing
    the same object to several threads is fine; only the table itself is
    guarded.

    Every distinct order requested gets its own entry. The table holds at
    most ``max_entries`` expansions and drops the oldest first.
    """
    _instance = None
    _lock = Lock()
    _table: Dict[FormKey, 'QSeries'] = {}
    max_entries = 256

    @classmethod
    def _ensure_instance(cls):
        """Ensure instance exists under lock."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._table = {}
        return cls._instance

    @classmethod
    def get(cls, key: FormKey) -> Optional['QSeries']:
        with cls._lock:
            return cls._ensure_instance()._table.get(key)

    @classmethod
    def put(cls, key: FormKey, series: 'QSeries') -> None:
        with cls._lock:
            table = cls._ensure_instance()._table
            table.pop(key, None)
            table[key] = series
            while len(table) > cls.max_entries:
                del table[next(iter(table))]

    @classmethod
    def get_or_build(cls, key: FormKey, builder: Callable[[], 'QSeries']) -> 'QSeries':
        cached = cls.get(key)
        if cached is not None:
            return cached
        # Built outside the lock; two threads racing on one key produce equal values.
        series = builder()
        cls.put(key, series)
        return series

    @classmethod
    def keys(cls) -> List[FormKey]:
        with cls._lock:
            return list(cls._ensure_instance()._table.keys())

    @classmethod
    def clear(cls) -> None:
        with cls._lock:
            cls._ensure_instance()._table.clear()
