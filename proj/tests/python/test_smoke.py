import math

import pytest

import spin_epsilon as se


def test_golden_point():
    row = se.compute_row(se.IsingParams(1.0, 0.3, 2.0))
    assert row.T00 == pytest.approx(0.8247159587814455, abs=1e-12)
    assert row.c_mu == pytest.approx(0.8938779389042457, abs=1e-12)
    assert row.c_q == pytest.approx(0.2654300359213157, abs=1e-12)
    assert row.ratio == pytest.approx(row.c_mu / row.c_q)


def test_infinite_temperature_has_no_ratio():
    row = se.compute_row(se.IsingParams(1.0, 0.0, math.inf))
    assert row.c_mu == 0.0 and row.c_q == 0.0
    assert row.ratio is None
    assert row.csv().startswith("inf,")


def test_bad_temperature():
    with pytest.raises(ValueError):
        se.IsingParams(1.0, 0.0, -1.0)
    with pytest.raises(se.DomainError):
        se.IsingParams(1.0, 0.0, 0.0)


def test_fidelity_saturates():
    tm = se.transition_matrix(se.IsingParams(-0.7, 1.1, 0.9))
    model = se.build_quantum_model(tm)
    for length in range(1, 8):
        assert se.classical_fidelity(tm, length) == pytest.approx(model.overlap(), abs=1e-12)
    assert se.quantum_statistical_complexity(model) <= se.statistical_complexity(tm)


def test_circuit_matches_machine():
    tm = se.transition_matrix(se.IsingParams(1.0, 0.3, 2.0))
    model = se.build_quantum_model(tm)
    for start in (0, 1):
        quantum = se.exact_output_distribution(model, start, 6).probs
        classical = se.future_distribution(tm, start, 6).probs
        assert max(abs(a - b) for a, b in zip(quantum, classical)) < 1e-12
    assert se.future_distribution(tm, 0, 2).as_dict().keys() == {"++", "+-", "-+", "--"}


def test_ring_oracle_close_to_transfer_matrix():
    params = se.IsingParams(1.0, 0.3, 2.0)
    ring = se.ring_conditional(params, 8, 1, 2).probs
    exact = se.future_distribution(se.transition_matrix(params), 0, 2).probs
    assert max(abs(a - b) for a, b in zip(ring, exact)) < 1e-4


def test_sweep_and_tmax():
    temps = se.temperature_grid(0.05, 100.0, 50)
    assert temps[0] == 0.05 and temps[-1] == 100.0
    rows = se.sweep(1.0, 0.3, temps, workers=2)
    assert [r.T for r in rows] == temps
    assert all(b.c_mu >= a.c_mu for a, b in zip(rows, rows[1:]))
    result = se.find_tmax(1.0, 0.3, tol=1e-5)
    assert result.interior
    assert result.t_max == pytest.approx(1.63213, abs=1e-3)
    assert se.CSV_HEADER.startswith("T,J,B,")


def test_samplers_are_seeded():
    tm = se.transition_matrix(se.IsingParams(1.0, 0.3, 2.0))
    a = se.simulate_classical(tm, 200, seed=7)
    assert a == se.simulate_classical(tm, 200, seed=7)
    assert set(a) <= {1, -1} and len(a) == 200
    assert len(se.simulate_quantum(tm, 200, start=1, seed=7)) == 200
    assert se.simulate_quantum(tm, 0) == []


def test_quick_verify():
    results = se.verify("quick", 42)
    assert len(results) == 10
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]
