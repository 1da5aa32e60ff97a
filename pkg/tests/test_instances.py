from fractions import Fraction

import numpy as np
import pytest

from annealbench import (
    ProblemInstance,
    apply_gauge,
    apply_mask,
    build_chimera,
    energy,
    energy_num,
    generate_instance,
    parse_instance,
    random_gauge,
    serialize_instance,
)
from conftest import reference_energy_num, spectrum_num


def test_r1_couplings_are_pm1():
    inst = generate_instance(build_chimera(4, 4, 4), 1, 7)
    assert set(np.unique(inst.j_num)) == {-1, 1}
    assert np.all(inst.h_num == 0)


def test_r7_couplings_cover_14_values():
    inst = generate_instance(build_chimera(8, 8, 4), 7, 11)
    values = set(np.unique(inst.j_num).tolist())
    assert values == set(range(-7, 0)) | set(range(1, 8))


def test_generation_deterministic_in_seed():
    g = build_chimera(3, 3, 4)
    a = generate_instance(g, 7, 123)
    b = generate_instance(g, 7, 123)
    cdiff = generate_instance(g, 7, 124)
    assert a == b
    assert np.any(a.j_num != cdiff.j_num)


def test_numerator_frequencies_uniform():
    # pool > 1e5 edge draws; each of the 2r values within 4 sigma of 1/(2r)
    g = build_chimera(8, 8, 4)
    r = 3
    counts = np.zeros(2 * r + 1, dtype=int)
    total = 0
    for seed in range(70):
        inst = generate_instance(g, r, 1000 + seed)
        counts += np.bincount(inst.j_num + r, minlength=2 * r + 1)
        total += inst.j_num.size
    assert total > 100_000
    assert counts[r] == 0  # zero excluded
    p = 1.0 / (2 * r)
    sigma = np.sqrt(total * p * (1 - p))
    for n in list(range(-r, 0)) + list(range(1, r + 1)):
        assert abs(counts[n + r] - total * p) < 4 * sigma


def test_ferro_energy(ferro_cell):
    assert energy(ferro_cell, np.ones(8, dtype=int)) == Fraction(-16)


def test_single_edge_energy():
    g = apply_mask(build_chimera(1, 1, 4), [1, 2, 3, 5, 6, 7])
    inst = ProblemInstance(graph=g, r=1, j_num=np.array([-1], dtype=np.int64),
                           h_num=np.zeros(8, dtype=np.int64), seed=0)
    assert energy(inst, np.array([1, 1])) == Fraction(1)


def test_energy_matches_reference_on_random_configs():
    inst = generate_instance(build_chimera(3, 1, 4), 7, 5)  # N = 24
    rng = np.random.default_rng(0)
    for _ in range(100):
        cfg = rng.choice([-1, 1], size=24)
        assert energy_num(inst, cfg) == reference_energy_num(inst, cfg)
        assert energy(inst, cfg) == Fraction(reference_energy_num(inst, cfg), 7)


def test_energy_rejects_bad_config():
    inst = generate_instance(build_chimera(1, 1, 4), 1, 0)
    with pytest.raises(ValueError):
        energy(inst, np.ones(7, dtype=int))
    with pytest.raises(ValueError):
        energy(inst, np.array([1, 1, 1, 1, 2, 1, 1, 1]))


def test_identity_gauge_is_identity():
    inst = generate_instance(build_chimera(2, 2, 4), 3, 9)
    ident = random_gauge(inst.graph, 0)
    object.__setattr__(ident, "a", np.ones_like(ident.a))
    assert apply_gauge(inst, ident) == inst


def test_gauge_involution_bit_exact():
    inst = generate_instance(build_chimera(2, 2, 4), 7, 9)
    gauge = random_gauge(inst.graph, 4)
    assert apply_gauge(apply_gauge(inst, gauge), gauge) == inst


def test_gauge_preserves_full_spectrum_multiset():
    inst = generate_instance(build_chimera(2, 1, 4), 7, 21)  # N = 16
    gauge = random_gauge(inst.graph, 13)
    before = np.sort(spectrum_num(inst))
    after = np.sort(spectrum_num(apply_gauge(inst, gauge)))
    assert np.array_equal(before, after)


def test_gauge_size_mismatch_rejected():
    inst = generate_instance(build_chimera(2, 2, 4), 1, 0)
    gauge = random_gauge(build_chimera(1, 1, 4), 0)
    with pytest.raises(ValueError):
        apply_gauge(inst, gauge)


def test_energy_parity_class():
    for seed in range(5):
        inst = generate_instance(build_chimera(2, 1, 4), 3, seed)  # N = 16
        parity = int(np.sum(inst.j_num)) % 2
        assert np.all(spectrum_num(inst) % 2 == parity)


def test_random_gauge_deterministic_and_uniform():
    g = build_chimera(8, 8, 4)
    assert random_gauge(g, 5) == random_gauge(g, 5)
    minus = 0
    total = 0
    for seed in range(200):
        gauge = random_gauge(g, seed)
        minus += int(np.sum(gauge.a < 0))
        total += g.n_active
    assert total > 100_000
    sigma = np.sqrt(total * 0.25)
    assert abs(minus - total / 2) < 3 * sigma


def test_random_gauge_respects_mask():
    g = apply_mask(build_chimera(2, 2, 4), [0, 9, 17])
    gauge = random_gauge(g, 3)
    assert np.all(gauge.a[[0, 9, 17]] == 1)


def test_round_trip_503_vertex_instance():
    g = apply_mask(build_chimera(8, 8, 4), range(9))
    inst = generate_instance(g, 7, 99)
    assert parse_instance(serialize_instance(inst)) == inst


def test_parse_rejects_zero_numerator():
    inst = generate_instance(build_chimera(1, 1, 4), 1, 0)
    text = serialize_instance(inst)
    lines = text.splitlines()
    lines[1] = lines[1].rsplit(" ", 1)[0] + " 0"
    with pytest.raises(ValueError):
        parse_instance("\n".join(lines))


def test_parse_rejects_out_of_range_numerator():
    inst = generate_instance(build_chimera(1, 1, 4), 1, 0)
    lines = serialize_instance(inst).splitlines()
    lines[1] = lines[1].rsplit(" ", 1)[0] + " 2"
    with pytest.raises(ValueError):
        parse_instance("\n".join(lines))


def test_parse_rejects_foreign_edge():
    inst = generate_instance(build_chimera(1, 1, 4), 1, 0)
    text = serialize_instance(inst) + "e 0 1 1\n"  # 0-1 intra-half: not an edge
    with pytest.raises(ValueError):
        parse_instance(text)


def test_parse_rejects_duplicate_edge():
    inst = generate_instance(build_chimera(1, 1, 4), 1, 0)
    lines = serialize_instance(inst).splitlines()
    text = "\n".join(lines + [lines[1]])
    with pytest.raises(ValueError):
        parse_instance(text)


def test_parse_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_instance("instance pegasus 1 1 4 1 0 rng=pcg64\n")
    with pytest.raises(ValueError):
        parse_instance("")


def test_instance_validation():
    g = build_chimera(1, 1, 4)
    with pytest.raises(ValueError):
        ProblemInstance(graph=g, r=0, j_num=np.ones(16, dtype=np.int64),
                        h_num=np.zeros(8, dtype=np.int64), seed=0)
    with pytest.raises(ValueError):
        ProblemInstance(graph=g, r=1, j_num=np.zeros(16, dtype=np.int64),
                        h_num=np.zeros(8, dtype=np.int64), seed=0)
