"""Cross-check harness: agreement with the primary CLI, fault injection."""

import shutil
from pathlib import Path

import pytest

from fixturegen.crosscheck import check_all
from fixturegen.generate import generate_bundle

CLI = shutil.which("idealorder")

pytestmark = pytest.mark.skipif(CLI is None, reason="idealorder CLI not installed")


@pytest.fixture(scope="module")
def small_bundles(tmp_path_factory):
    out = tmp_path_factory.mktemp("bundles")
    for label in ("2.0.4.1", "3.1.503.1"):
        generate_bundle(label, out, max_norm=40, prime_bound=12)
    return out


def test_zero_mismatches(small_bundles):
    report = check_all(small_bundles, CLI, max_norm=40)
    assert report.ok, report.render()
    assert len(report.fixtures) == 2
    assert report.checked_lines > 100


def test_tampered_reference_detected(small_bundles, tmp_path):
    work = tmp_path / "tampered"
    shutil.copytree(small_bundles, work)
    ref = work / "references" / "gaussian" / "ideals.txt"
    text = ref.read_text().splitlines()
    # swap the two entries of some multi-ideal norm
    for i, line in enumerate(text):
        lbl, fact = line.split(" = ")
        if lbl.endswith(".2"):
            text[i - 1], text[i] = (
                text[i - 1].split(" = ")[0] + " = " + fact,
                lbl + " = " + text[i - 1].split(" = ")[1],
            )
            break
    ref.write_text("\n".join(text) + "\n")
    report = check_all(work, CLI, max_norm=40)
    assert not report.ok
    assert any("gaussian" in m for m in report.mismatches)


def test_empty_range_is_vacuous(small_bundles):
    report = check_all(small_bundles, CLI, max_norm=1)
    assert report.ok


def test_missing_references_errors(tmp_path):
    (tmp_path / "x.json").write_text("{}")
    with pytest.raises(RuntimeError):
        check_all(tmp_path, CLI, max_norm=10)
