"""
Property suites run by `qspace-tool.py verify <suite>`
"""

import logging
from typing import Any, Dict, Optional

from ..config import EngineParams
from ..errors import UnknownSuiteError
from .base_verifier import BaseVerifier
from .crossing_verifier import CrossingVerifier
from .duality_verifier import DualityVerifier
from .hopf_verifier import HopfVerifier
from .integral_verifier import ByPartsVerifier, ClassicalLimitVerifier, IntegralVerifier, StokesVerifier
from .minkowski_verifier import MinkowskiVerifier
from .oracle_verifier import OracleVerifier
from .pairing_verifier import PairingVerifier

logger = logging.getLogger(__name__)

SUITES = {
    'oracle': OracleVerifier,
    'hopf': HopfVerifier,
    'duality': DualityVerifier,
    'crossing': CrossingVerifier,
    'pairing': PairingVerifier,
    'integral': IntegralVerifier,
    'classical': ClassicalLimitVerifier,
    'stokes': StokesVerifier,
    'byparts': ByPartsVerifier,
    'mink-volume': MinkowskiVerifier,
}


def run_verify(suite_name: str, params: Optional[EngineParams] = None) -> Dict[str, Any]:
    """Run one suite, or every suite for 'all'; {'results': ..., 'timing': ...}"""
    if suite_name == 'all':
        names = list(SUITES)
    elif suite_name in SUITES:
        names = [suite_name]
    else:
        raise UnknownSuiteError(f"unknown suite {suite_name!r}, expected one of {sorted(SUITES)} or 'all'")

    params = params or EngineParams.from_env()
    results, timing = {}, {}
    for name in names:
        results[name], timing[name] = SUITES[name](params).run()
    passed = all(r['passed'] for r in results.values())
    logger.info(f"Verification {'passed' if passed else 'FAILED'}: {', '.join(names)}")
    return {
        'results': {'passed': passed, 'params': params.to_dict(), 'suites': results},
        'timing': timing,
    }


__all__ = ['BaseVerifier', 'SUITES', 'run_verify']
