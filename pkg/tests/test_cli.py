import json

import pytest

from crnkit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def anderies_rates(tmp_path):
    path = tmp_path / "rates.json"
    path.write_text(json.dumps({"k1": 1.0, "k2": 2.0, "a_m": 1.0, "beta": 0.5}))
    return str(path)


def chain_file(tmp_path, m):
    species = [f"S{i}" for i in range(m)]
    lines = ["@species " + " ".join(species)]
    lines += [f"@reaction r{i}: {species[i]} <-> {species[i + 1]}" for i in range(m - 1)]
    path = tmp_path / f"chain{m}.crn"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def test_schmitz_text_report(capsys):
    code, out, _ = run(capsys, "analyze", "builtin:schmitz")
    assert code == 0
    for line in ("deficiency: 0", "concordant: yes", "Birch: yes (rule R2)", "no ACR: yes (rule R10)"):
        assert line in out.splitlines() or f"  {line}" in out.splitlines()
    assert "co-monostationary: published claim, not machine-derived" in out


def test_plp_basis_in_report(capsys):
    code, out, _ = run(capsys, "analyze", "builtin:anderies-gt", "--ldc", "builtin:anderies-ldc")
    assert code == 0
    assert "PLP basis: (-1, 124.846, 124.846)" in out


def test_json_is_deterministic_and_keyed(capsys):
    _, a, _ = run(capsys, "analyze", "builtin:anderies-gt", "--json")
    _, b, _ = run(capsys, "analyze", "builtin:anderies-gt", "--json")
    assert a == b
    d = json.loads(a)
    for key in ("indices", "kinetics", "decompositions", "concordance", "injectivity", "plp", "acr",
                "multiplicity", "stability", "conclusions", "provenance"):
        assert key in d
    assert d["plp"]["parameter_basis"] == [["-1", "1623/13", "1623/13"]]
    assert d["conclusions"]["published_claims"] == {"co_multistationary": "published claim, not machine-derived"}
    assert any(c["rule"] == "R6" and c["claim"] == "multistationary" for c in d["conclusions"]["derived"])


def test_concordance_bound(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("CRNKIT_MAX_CONCORDANCE_SPECIES", raising=False)
    path = chain_file(tmp_path, 13)
    code, out, _ = run(capsys, "analyze", path, "--no-injectivity")
    assert code == 0
    assert "concordance: skipped (TooLarge)" in out
    code, out, _ = run(capsys, "analyze", chain_file(tmp_path, 5))
    assert "concordant: yes" in out


def test_compare_table3(capsys):
    code, out, _ = run(capsys, "compare", "builtin:aggregated-schmitz", "builtin:anderies-0-ldc")
    assert code == 0
    starred = [line.split()[1] for line in out.splitlines() if line.startswith("*")]
    assert starred == ["connectivity", "molecularity", "concordance", "RDK", "NIK", "ACR"]
    assert out.rstrip().endswith("differences: 6")


def test_compare_with_itself(capsys):
    code, out, _ = run(capsys, "compare", "builtin:anderies-0", "builtin:anderies-0", "--json")
    assert code == 0
    assert json.loads(out)["differences"] == 0


def test_builtin_list_and_show(capsys, tmp_path):
    code, out, _ = run(capsys, "builtin", "list")
    assert code == 0 and out.split()[0] == "schmitz"
    code, out, _ = run(capsys, "builtin", "show", "anderies-gt")
    assert "orders { A1: -1.894, A2: 0.426 }" in out
    path = tmp_path / "and.crn"
    path.write_text(out)
    code, rep, _ = run(capsys, "analyze", str(path))
    assert code == 0 and "deficiency: 1" in rep


def test_equilibria_schmitz(capsys):
    code, out, _ = run(capsys, "equilibria", "builtin:schmitz", "--m2", "730", "--m2", "800", "--json")
    assert code == 0
    eq = json.loads(out)["equilibria"]
    assert len(eq) == 2 and eq[0]["M2"] == 730.0


def test_equilibria_anderies_gt_finds_both(capsys, anderies_rates):
    code, out, _ = run(capsys, "equilibria", "builtin:anderies-gt", "--rates", anderies_rates, "--total", "10", "--json")
    assert code == 0
    assert len(json.loads(out)["equilibria"]) == 2


def test_stability(capsys):
    code, out, _ = run(capsys, "stability", "builtin:schmitz")
    assert code == 0 and "classification: stable" in out
    state = "612,730,140.424,37041.164,579.080,1499"
    code, _, err = run(capsys, "stability", "builtin:schmitz", "--state", state)
    assert code == 3 and "NotAnEquilibrium" in err
    code, out, _ = run(capsys, "stability", "builtin:schmitz", "--state", state, "--residual-tol", "3e-2")
    assert code == 0 and "zero eigenvalues: 1" in out


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "builtin:anderies-gt")
    assert code == 0
    assert "finest incidence-independent decomposition (3 parts" in out


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.crn"
    bad.write_text("@species A\n@reaction R: A -> A\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "analyze", "builtin:nope")
    assert code == 3
    one_way = tmp_path / "ab.crn"
    one_way.write_text("@species A B\n@reaction R1: A -> B ; k = 1\n")
    code, _, err = run(capsys, "equilibria", str(one_way), "--state", "1,1")
    assert code == 4 and "NoEquilibriumFound" in err
