"""
Base verifier class for the property suites
"""

import logging
import math
from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..config import EngineParams

logger = logging.getLogger(__name__)


class BaseVerifier(ABC):
    """Abstract base class for all verification suites.

    A suite checks named properties over many cases.  Each property keeps a
    case count, a failure count and the first counterexample; any failure
    fails the suite.
    """

    description = ""

    def __init__(self, name: str, params: Optional[EngineParams] = None):
        self.name = name
        self.params = (params or EngineParams()).validate()
        self.start_time = None
        self.errors: List[str] = []
        self.properties: Dict[str, Dict[str, Any]] = {}

    @abstractmethod
    def verify(self) -> None:
        """Run every property of the suite"""

    def run(self) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        """(results, timing); results hold no timestamps"""
        self.start_verification()
        self.verify()
        return self.end_verification()

    def start_verification(self):
        self.start_time = datetime.now()
        self.errors = []
        self.properties = {}
        logger.info(f"Starting {self.name} verification")

    def end_verification(self) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        end_time = datetime.now()
        duration = (end_time - self.start_time).total_seconds()
        results = {
            'suite': self.name,
            'description': self.description,
            'passed': self.passed,
            'properties': {name: dict(record) for name, record in sorted(self.properties.items())},
            'errors': list(self.errors),
        }
        timing = {
            'start_time': self.start_time.isoformat(),
            'end_time': end_time.isoformat(),
            'duration_seconds': duration,
        }
        logger.info(f"Completed {self.name} verification in {duration:.2f}s")
        return results, timing

    @property
    def passed(self) -> bool:
        return not self.errors and all(r['failures'] == 0 for r in self.properties.values())

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.params.seed)

    # -- recording -------------------------------------------------------

    def _record(self, prop: str) -> Dict[str, Any]:
        return self.properties.setdefault(prop, {'cases': 0, 'failures': 0})

    def note(self, prop: str, key: str, value: Any):
        """Attach an informational value to a property"""
        self._record(prop)[key] = value

    def record_result(self, prop: str, ok: bool, case: Any, lhs: Any = None, rhs: Any = None) -> bool:
        record = self._record(prop)
        record['cases'] += 1
        if ok:
            return True
        record['failures'] += 1
        if 'counterexample' not in record:
            record['counterexample'] = {'input': str(case), 'lhs': _text(lhs), 'rhs': _text(rhs)}
            self.add_error(f"{prop} failed for {case}")
        return False

    def check(self, prop: str, lhs: Any, rhs: Any, case: Any) -> bool:
        """Exact equality of two engine values"""
        return self.record_result(prop, lhs == rhs, case, lhs, rhs)

    def check_close(self, prop: str, lhs: float, rhs: float, case: Any,
                    rel: float = 1e-8, abs_tol: float = 0.0) -> bool:
        ok = math.isfinite(lhs) and math.isfinite(rhs) and math.isclose(lhs, rhs, rel_tol=rel, abs_tol=abs_tol)
        return self.record_result(prop, ok, case, lhs, rhs)

    def check_true(self, prop: str, ok: bool, case: Any, detail: Any = None) -> bool:
        return self.record_result(prop, bool(ok), case, detail)

    def guarded(self, prop: str, case: Any, fn: Callable[[], None]):
        """Run one case; an exception counts as a failure of prop"""
        try:
            fn()
        except Exception as e:
            record = self._record(prop)
            record['cases'] += 1
            record['failures'] += 1
            record.setdefault('counterexample', {'input': str(case), 'error': f"{type(e).__name__}: {e}"})
            self.add_error(f"{prop} raised {type(e).__name__} for {case}: {e}")

    def add_error(self, error: str):
        self.errors.append(error)
        logger.error(f"{self.name}: {error}")


def _text(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)
