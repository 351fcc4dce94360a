"""Wide simulation grids (minutes of runtime); opt in with ``pytest -m slow``."""

import pytest

import lyapzeros as lz
from lyapzeros import RepSpec, predict, so_star, sp, su
from lyapzeros.cli import _admissible_rows, main


def _headline_pairs():
    """Hodge-admissible, matrix-realizable pairs with max(p+q, 2n, 2g) <= 6
    and a nondegenerate top exponent."""
    pairs = []
    for total in range(2, 7):
        for q in range(1, total // 2 + 1):
            pairs.append((su(total - q, q), RepSpec.standard()))
    for p in range(2, 6):
        for k in range(2, p + 1):
            pairs.append((su(p, 1), RepSpec.exterior(k)))
    pairs += [(so_star(2), RepSpec.standard()), (so_star(3), RepSpec.standard())]
    pairs += [(sp(g), RepSpec.standard()) for g in (1, 2, 3)]
    return pairs


@pytest.mark.slow
@pytest.mark.parametrize("form,rep", _headline_pairs(),
                         ids=lambda v: v.label() if hasattr(v, "label") else str(v))
def test_verify_matches_on_headline_grid(form, rep):
    cfg = lz.SimConfig(form=form, rep=rep)
    report = lz.verify_prediction(cfg, predict(form, rep))
    assert report.verdict == "match", (form.label(), rep.label(), report.details)


def _cli_grid_rows():
    rows = []
    for r in _admissible_rows(12):
        if r["rep"] in ("spin", "half-spin:+", "half-spin:-"):
            continue   # weight combinatorics only; verify exits 3 by design
        rows.append((r["form"], r["rep"]))
    return rows


@pytest.mark.slow
@pytest.mark.parametrize("form_label,rep_label", _cli_grid_rows())
def test_cli_verify_grid_exits_zero(form_label, rep_label):
    args = _args_for(form_label) + ["--rep", rep_label, "--format", "json"]
    assert main(["verify"] + args) == 0


def _args_for(label):
    if label.startswith("su("):
        p, q = label[3:-1].split(",")
        return ["--group", "su", "--p", p, "--q", q]
    if label.startswith("so*("):
        n = int(label[4:-1]) // 2
        return ["--group", "so-star", "--n", str(n)]
    if label.startswith("so("):
        m = label[3:-1].split(",")[0]
        return ["--group", "so-split", "--m", m]
    g = int(label[3:-3]) // 2
    return ["--group", "sp", "--g", str(g)]
