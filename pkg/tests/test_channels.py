"""Channel model tests: builtins, transmission, relabeling, file I/O."""

import json

import numpy as np
import pytest
from scipy import stats

from dihedral_codes.channels import (
    Channel,
    ChannelFormatError,
    Labeling,
    builtin_channel,
    channel_from_json_dict,
    channel_to_json_dict,
    default_labeling,
    group_noise_channel,
    load_channel,
    load_channel_json,
    load_channel_tsv,
    relabel,
    save_channel,
    transmit,
)
from dihedral_codes.group import D6, DihedralElement

E = {D6.render(a): a for a in D6.elements()}


def test_channel_validation():
    with pytest.raises(ValueError):
        Channel(3, np.ones((6, 4)))  # rows sum to 4
    with pytest.raises(ValueError):
        Channel(3, -np.eye(6))
    with pytest.raises(ValueError):
        Channel(3, np.ones((4, 4)) / 4)  # needs 6 rows
    ch = Channel(3, np.eye(6))
    assert ch.input_size == 6 and ch.output_size == 6
    with pytest.raises(ValueError):
        ch.transition[0, 0] = 0.5  # read-only


def test_labeling():
    lab = default_labeling()
    rendered = [D6.render(lab.element_of_input(m)) for m in range(6)]
    assert rendered == ["1", "xy", "x^2", "y", "x", "x^2y"]
    for m in range(6):
        assert lab.input_of_element(lab.element_of_input(m)) == m
    with pytest.raises(ValueError):
        Labeling(p=3, elements=(0, 0, 1, 2, 3, 4))


def test_builtin_identity_and_useless():
    ident = builtin_channel("identity")
    assert np.array_equal(ident.transition, np.eye(6))
    useless = builtin_channel("useless", outputs=4)
    assert useless.output_size == 4
    assert np.all(useless.transition == 0.25)
    with pytest.raises(ValueError):
        builtin_channel("no-such-channel")
    with pytest.raises(ValueError):
        builtin_channel("identity", outputs=3)


def test_builtin_revealing_channels():
    rot = builtin_channel("rotation-revealing")
    assert rot.output_size == 3
    lab = default_labeling()
    for m in range(6):
        alpha = lab.element_of_input(m).alpha
        assert rot.transition[m, alpha] == 1.0
    refl = builtin_channel("reflection-revealing")
    assert refl.output_size == 2
    for m in range(6):
        assert refl.transition[m, lab.element_of_input(m).beta] == 1.0


def test_group_noise_point_mass_is_identity():
    noise = np.zeros(6)
    noise[0] = 1.0
    ch = group_noise_channel(noise)
    assert np.array_equal(ch.transition, np.eye(6))


def test_group_noise_structure():
    rng = np.random.default_rng(0)
    noise = rng.dirichlet(np.ones(6))
    ch = group_noise_channel(noise)
    lab = default_labeling()
    # W(y|x) must depend only on x^-1 * y
    for m in range(6):
        x = lab.element_of_input(m)
        for y in range(6):
            prod = D6.mul(D6.inv(x), lab.element_of_input(y))
            assert ch.transition[m, y] == noise[D6.index(prod)]


def test_three_eps_family():
    ch = builtin_channel("three-eps", eps1=0.1, eps2=0.2, eps3=0.15)
    assert ch.output_size == 6
    assert np.allclose(ch.transition.sum(axis=1), 1.0)
    assert ch.transition[0, 0] == pytest.approx(1 - 0.1 - 0.2 - 0.15)
    with pytest.raises(ValueError):
        builtin_channel("three-eps", eps1=0.9, eps2=0.2, eps3=0.0)


def test_transmit_identity_and_deterministic():
    ident = builtin_channel("identity")
    lab = default_labeling()
    cw = (E["x"], E["x^2y"], E["1"])
    y = transmit(ident, cw, lab, rng=0)
    assert list(y) == [lab.input_of_element(c) for c in cw]
    # rotation-revealing, c = (x, x^2 y) -> y = (1, 2)
    rot = builtin_channel("rotation-revealing")
    assert list(transmit(rot, (E["x"], E["x^2y"]), lab, rng=1)) == [1, 2]


def test_transmit_reproducible():
    ch = builtin_channel("three-eps", eps1=0.1, eps2=0.2, eps3=0.15)
    cw = tuple(D6.elements()) * 4
    a = transmit(ch, cw, rng=42)
    b = transmit(ch, cw, rng=42)
    assert np.array_equal(a, b)


def test_transmit_samples_the_transition_row():
    ch = builtin_channel("three-eps", eps1=0.1, eps2=0.2, eps3=0.15)
    m = 2  # fixed input x^2 under the default labeling
    cw = (E["x^2"],) * 20000
    y = transmit(ch, cw, rng=7)
    counts = np.bincount(y, minlength=6)
    _, pvalue = stats.chisquare(counts, ch.transition[m] * len(cw))
    assert pvalue > 0.01


def test_useless_channel_output_independent_of_input():
    useless = builtin_channel("useless")
    rng = np.random.default_rng(3)
    counts = np.zeros((2, 6), dtype=int)
    for i, cw in enumerate([(E["1"],) * 3000, (E["x^2y"],) * 3000]):
        y = transmit(useless, cw, rng=rng)
        counts[i] = np.bincount(y, minlength=6)
    _, pvalue, _, _ = stats.chi2_contingency(counts)
    assert pvalue > 0.01


def test_relabel():
    ch = builtin_channel("rotation-revealing")
    ident_perm = list(range(6))
    assert relabel(ch, ident_perm) == ch
    perm = [3, 4, 0, 1, 2, 5]
    inv = np.argsort(perm).tolist()
    assert relabel(relabel(ch, perm), inv) == ch
    assert np.allclose(relabel(ch, perm).transition.sum(axis=1), 1.0)
    with pytest.raises(ValueError):
        relabel(ch, [0, 1, 2])
    with pytest.raises(ValueError):
        relabel(ch, [0, 0, 1, 2, 3, 4])


def test_json_round_trip(tmp_path):
    ch = builtin_channel("three-eps", eps1=0.05, eps2=0.1, eps3=0.2)
    lab = Labeling(p=3, elements=(5, 4, 3, 2, 1, 0))
    path = tmp_path / "chan.json"
    save_channel(path, ch, lab)
    loaded, loaded_lab = load_channel(path)
    assert loaded == ch
    assert loaded_lab == lab


def test_json_without_labels():
    rec = channel_to_json_dict(builtin_channel("identity"))
    assert "labels" not in rec
    ch, lab = channel_from_json_dict(rec)
    assert lab is None
    assert ch == builtin_channel("identity")


def test_malformed_json_has_line_and_column():
    with pytest.raises(ChannelFormatError) as exc:
        load_channel_json('{"p": 3, "outputs": 6, "rows": [1, }')
    assert exc.value.line == 1
    assert exc.value.col is not None
    assert "line 1" in str(exc.value)


def test_json_validation_errors():
    with pytest.raises(ChannelFormatError):
        load_channel_json(json.dumps({"p": 3, "outputs": 2, "rows": [[1.0, 0.0]] * 5}))
    bad_sum = {"p": 3, "outputs": 2, "rows": [[0.6, 0.6]] * 6}
    with pytest.raises(ChannelFormatError):
        load_channel_json(json.dumps(bad_sum))
    bad_labels = {
        "p": 3,
        "outputs": 2,
        "rows": [[0.5, 0.5]] * 6,
        "labels": [0, 1, 2, 3, 4, 4],
    }
    with pytest.raises(ChannelFormatError):
        load_channel_json(json.dumps(bad_labels))


def test_tsv_import(tmp_path):
    lines = ["# identity-ish", *("\t".join(str(float(i == j)) for j in range(6)) for i in range(6))]
    path = tmp_path / "chan.tsv"
    path.write_text("\n".join(lines) + "\n")
    ch, lab = load_channel(path)
    assert lab is None
    assert ch == builtin_channel("identity")
    with pytest.raises(ChannelFormatError) as exc:
        load_channel_tsv("1.0\t0.0\nnot-a-number\t1.0\n")
    assert exc.value.line == 2
