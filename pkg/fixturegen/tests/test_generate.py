"""Generation: shipped-fixture reproduction, idempotency, CAS-side factors."""

import json
from pathlib import Path

import pytest

from fixturegen.generate import generate_bundle, build_field_doc, KNOWN_FIELDS
from fixturegen.localfield import CasError, padic_factors

SHIPPED = Path(__file__).resolve().parents[2] / "fixtures"

FAST_FIELDS = ["2.0.4.1", "2.0.3.1", "3.1.503.1", "x4.2x2.x.4"]


@pytest.mark.parametrize("label", FAST_FIELDS)
def test_regeneration_matches_shipped(tmp_path, label):
    stem = generate_bundle(label, tmp_path, max_norm=60, prime_bound=20)
    got = (tmp_path / f"{stem}.json").read_bytes()
    want = (SHIPPED / f"{stem}.json").read_bytes()
    assert got == want


def test_generation_idempotent(tmp_path):
    stem = generate_bundle("2.0.4.1", tmp_path, max_norm=60, prime_bound=20)
    first = {
        p.name: p.read_bytes()
        for p in [tmp_path / f"{stem}.json",
                  tmp_path / "references" / stem / "primes.txt",
                  tmp_path / "references" / stem / "ideals.txt"]
    }
    generate_bundle("2.0.4.1", tmp_path, max_norm=60, prime_bound=20)
    for p, data in first.items():
        path = tmp_path / p if not p.endswith(".txt") else tmp_path / "references" / stem / p
        assert path.read_bytes() == data


def test_padic_factors_503():
    # frozen 503-adic factors of the Dedekind cubic at k=2
    got = sorted(tuple(f) for f in padic_factors([8, 2, -1, 1], 503, 2))
    assert got == [(87617, 61079, 1), (191929, 1)]


def test_padic_factors_match_shipped_blocks():
    doc = json.loads((SHIPPED / "degree-ten.json").read_text())
    g = doc["poly"]
    for p in (3, 2141, 26641):
        stored = next(
            ent["padic_factors"]["coeffs_mod_pk"]
            for ent in doc["primes"][str(p)]
            if ent.get("padic_factors")
        )
        got = sorted(tuple(f[:-1]) for f in padic_factors(g, p, 8))
        assert got == sorted(tuple(r) for r in stored), p


def test_ramified_clusters_left_whole():
    assert [len(f) - 1 for f in padic_factors([1, 0, 1], 2, 4)] == [2]
    assert [len(f) - 1 for f in padic_factors([1, -1, 1], 3, 4)] == [2]


def test_reducible_poly_rejected(tmp_path):
    with pytest.raises(CasError):
        generate_bundle("0,0,1", tmp_path)  # x^2


def test_reference_files_well_formed(tmp_path):
    stem = generate_bundle("3.1.503.1", tmp_path, max_norm=40, prime_bound=10)
    primes = (tmp_path / "references" / stem / "primes.txt").read_text().splitlines()
    assert primes[0] == "p 2"
    assert any(line.startswith("2.1 p=2") for line in primes)
    ideals = (tmp_path / "references" / stem / "ideals.txt").read_text().splitlines()
    assert ideals[0] == "1.1 = (1)"
    # labels strictly ordered within each norm
    seen = {}
    for line in ideals:
        lbl = line.split(" = ")[0]
        n, i = map(int, lbl.split("."))
        assert seen.get(n, 0) + 1 == i
        seen[n] = i


def test_arbitrary_poly_spec(tmp_path):
    # Z[sqrt(-3)] is index 2 in the maximal order: dK = -3, basis gains a /2
    stem = generate_bundle("x^2+3", tmp_path, max_norm=30, prime_bound=10)
    doc = json.loads((tmp_path / f"{stem}.json").read_text())
    assert doc["poly"] == [3, 0, 1]
    assert doc["field_disc"] == -3
    assert any("/2" in c for row in doc["integral_basis"] for c in row)
