import math

import numpy as np
import pytest

import entropic_ghz as eg


def h2(p):
    return 0.0 if p <= 0 or p >= 1 else -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def test_ghz_paradox_table():
    t = eg.paradox_table(eg.ghz_state())
    assert abs(t.h_a) < 1e-9 and abs(t.h_b) < 1e-9 and abs(t.h_c) < 1e-9
    assert abs(t.h_d - 1) < 1e-9
    r = eg.entropic_mermin_report(eg.ghz_state())
    assert r.violated
    assert r.margin == pytest.approx(-1, abs=1e-9)
    assert r.labels == ["D=A1B1C1", "A=A1B2C2", "B=A2B1C2", "C=A2B2C1"]


def test_outcome_distribution_against_numpy():
    ket = np.zeros(8, dtype=complex)
    ket[0] = ket[7] = 1 / math.sqrt(2)
    rho = np.outer(ket, ket.conj())
    angles = (0.3, -1.1, 2.0)
    ops = [np.array([[0, np.exp(-1j * a)], [np.exp(1j * a), 0]]) for a in angles]
    projectors = [[(np.eye(2) + s * o) / 2 for s in (1, -1)] for o in ops]
    expected = []
    for idx in range(8):
        bits = [(idx >> (2 - k)) & 1 for k in range(3)]
        p = np.kron(np.kron(projectors[0][bits[0]], projectors[1][bits[1]]), projectors[2][bits[2]])
        expected.append(np.trace(rho @ p).real)
    got = eg.outcome_distribution(eg.ghz_state(), [eg.xy_observable(a) for a in angles])
    assert np.allclose(got, expected, atol=1e-12)
    e = eg.product_expectation(eg.ghz_state(), [eg.xy_observable(a) for a in angles])
    assert e == pytest.approx(math.cos(sum(angles)), abs=1e-12)


def test_density_matrix_roundtrip():
    rho = eg.noisy_state(eg.ghz_state(), 0.25)
    m = rho.matrix
    assert m.shape == (8, 8)
    assert rho.purity() == pytest.approx(np.trace(m @ m).real)
    with pytest.raises(ValueError):
        eg.noisy_state(eg.ghz_state(), 1.5)


def test_mermin_value():
    r = eg.mermin_correlation_report(eg.ghz_state(), eg.TripartiteSettings.pauli_xy())
    assert r.mermin_value == pytest.approx(4, abs=1e-10)
    assert r.margin == pytest.approx(2 - r.mermin_value, abs=1e-12)


def test_thresholds():
    t = eg.find_threshold(eg.preset_scenario(eg.Family.entropic3))
    assert t.status == eg.ThresholdStatus.found
    assert 0.121 <= t.p_star <= 0.125
    assert 3 * h2(t.p_star / 2) == pytest.approx(1, abs=1e-3)
    rows = eg.sweep(eg.preset_scenario(eg.Family.mermin3), [0.0, 0.5, 1.0], jobs=2)
    assert [r[0] for r in rows] == [0.0, 0.5, 1.0]
    assert rows[0][3] == pytest.approx(-2)


def test_compression_inequality():
    s = eg.sample_rounds(eg.ghz_state(), eg.TripartiteSettings.reference(), 65536, 7)
    c = eg.compression_inequality_report(s, "rle-elias")
    assert c.report.violated
    assert all(t <= 73 for t in c.report.rhs_terms)
    assert c.report.lhs >= 0.99 * 65536
    again = eg.sample_rounds(eg.ghz_state(), eg.TripartiteSettings.reference(), 65536, 7)
    assert str(again.xor_string(0)) == str(s.xor_string(0))


def test_codec_roundtrip():
    bits = eg.BitString.from_string("0001110100000000001")
    for codec in ("rle-elias", "block-huffman"):
        report, blob = eg.compress(bits, codec)
        assert report.lossless_verified
        assert eg.decompress(blob) == bits


def test_lhv():
    assert not eg.lhv_feasibility(eg.ghz_state()).feasible
    ok = eg.lhv_feasibility(eg.noisy_state(eg.ghz_state(), 0.9))
    assert ok.feasible and ok.witness is not None
    assert not eg.classical_entropic_mermin(eg.random_joint(3)).violated
