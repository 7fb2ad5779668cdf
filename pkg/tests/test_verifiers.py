import pytest

from qspace.config import EngineParams
from qspace.errors import UnknownSuiteError
from qspace.verifiers import SUITES, BaseVerifier, run_verify


class ToyVerifier(BaseVerifier):
    description = "arithmetic facts, one of them wrong"

    def __init__(self, params=None):
        super().__init__("toy", params)

    def verify(self):
        for n in range(3):
            self.check('doubling', n + n, 2 * n, n)
        self.check_close('sqrt', 2.0 ** 0.5 * 2.0 ** 0.5, 2.0, 'two')
        self.check('wrong', 1, 2, 'one')
        self.check('wrong', 3, 4, 'three')
        self.guarded('raises', 'zero', lambda: 1 / 0)
        self.note('doubling', 'largest', 2)


class TestBaseVerifier:
    def test_records(self):
        results, timing = ToyVerifier().run()
        props = results['properties']
        assert props['doubling'] == {'cases': 3, 'failures': 0, 'largest': 2}
        assert props['sqrt']['failures'] == 0
        assert props['wrong']['cases'] == 2
        assert props['wrong']['counterexample'] == {'input': 'one', 'lhs': 1, 'rhs': 2}
        assert props['raises']['counterexample']['error'].startswith('ZeroDivisionError')
        assert results['passed'] is False
        assert len(results['errors']) == 2
        assert timing['duration_seconds'] >= 0

    def test_non_finite_values_fail(self):
        verifier = ToyVerifier()
        verifier.start_verification()
        assert not verifier.check_close('nan', float('nan'), float('nan'), 'nan')
        assert verifier.check_close('tiny', 1e-12, 0.0, 'tiny', rel=0.0, abs_tol=1e-10)

    def test_rng_follows_seed(self):
        a = ToyVerifier(EngineParams(seed=3)).rng().integers(0, 1000, 5)
        b = ToyVerifier(EngineParams(seed=3)).rng().integers(0, 1000, 5)
        assert list(a) == list(b)

    def test_rejects_bad_params(self):
        with pytest.raises(ValueError):
            ToyVerifier(EngineParams(samples=0))


class TestSuites:
    @pytest.mark.parametrize("suite", sorted(SUITES))
    def test_suite_passes(self, small_params, suite):
        report = run_verify(suite, small_params)
        results = report['results']
        assert results['passed'], results['suites'][suite]['errors']
        assert results['params'] == small_params.to_dict()
        assert set(report['timing']) == {suite}
        assert all(record['cases'] > 0 for record in results['suites'][suite]['properties'].values())

    def test_classical_limit_reports_its_deviation(self, small_params):
        record = run_verify('classical', small_params)['results']['suites']['classical']['properties']
        deviation = record['deviation_from_pi']
        assert deviation['failures'] == 0
        assert deviation['deviation'] == pytest.approx(0.0303, abs=5e-5)
        assert deviation['within_two_percent_of_pi'] is False

    def test_results_are_deterministic(self, small_params):
        first = run_verify('hopf', small_params)['results']
        assert run_verify('hopf', small_params)['results'] == first

    def test_unknown_suite(self, small_params):
        with pytest.raises(UnknownSuiteError):
            run_verify('bogus', small_params)
