import io
import json
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from conftest import FIXTURES, fixture_path, load_root
from lexmark.cli import (
    EXIT_ERRORS,
    EXIT_OK,
    EXIT_USAGE,
    CliConfig,
    build_parser,
    config_from_args,
    expand_inputs,
    inspect_document,
    main,
    run,
)
from lexmark.xmltree import normalize_whitespace, parse, parse_file


def cli(*args, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    try:
        cfg = config_from_args(build_parser().parse_args(list(args)))
    except SystemExit:
        return EXIT_USAGE, "", ""
    code = run(cfg, out, err, io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return str(fixture_path(name))


@pytest.fixture
def chdir_fixtures(monkeypatch):
    monkeypatch.chdir(FIXTURES)


# -- validate ------------------------------------------------------------------------------


def test_validate_fig5_clean():
    code, out, err = cli("validate", fx("fig5.xml"))
    assert (code, out, err) == (EXIT_OK, "", "")


def test_validate_with_explicit_schema():
    schema = resources.files("lexmark") / "data" / "wdg.rnc"
    assert cli("validate", "--schema", str(schema), fx("fig5.xml"))[0] == EXIT_OK


def test_badgen_golden_json(chdir_fixtures):
    code, out, err = cli("validate", "--diag-format", "json", "badgen.xml")
    assert code == EXIT_ERRORS
    assert out == ""
    records = [json.loads(line) for line in err.splitlines()]
    assert records == [{
        "file": "badgen.xml", "line": 6, "column": 7, "severity": "error", "code": "invalid-value",
        "message": "text 'masc.' not in the allowed set for <gen value=\"masculine\">", "expected": "'m.'",
    }]


def test_badgen_human(chdir_fixtures):
    code, _, err = cli("validate", "badgen.xml")
    assert code == EXIT_ERRORS
    assert err.startswith("badgen.xml:6:7: error: ")
    assert err.count("\n") == 1


def test_unresolved_ref_warning_keeps_exit_zero(chdir_fixtures):
    code, _, err = cli("validate", "--diag-format", "json", "fig6.xml")
    assert code == EXIT_OK
    (record,) = [json.loads(line) for line in err.splitlines()]
    assert (record["severity"], record["code"]) == ("warning", "unresolved-ref")


def test_whole_dictionary_makes_it_an_error(chdir_fixtures):
    assert cli("validate", "--whole-dictionary", "fig6.xml")[0] == EXIT_ERRORS


def test_batch_resolves_across_files(chdir_fixtures):
    assert cli("validate", "fig6.xml", "stub_E_S_165.xml") == (EXIT_OK, "", "")


def test_schema_from_environment(monkeypatch, tmp_path, chdir_fixtures):
    schema = tmp_path / "gen.rnc"
    schema.write_text((FIXTURES / "gen_fragment.rnc").read_text(encoding="utf-8"), encoding="utf-8")
    monkeypatch.setenv("LEXMARK_SCHEMA", str(schema))
    # the fragment schema only knows <gen>, so a whole entry is rejected
    assert cli("validate", "fig5.xml")[0] == EXIT_ERRORS
    assert cli("validate", "-", stdin='<gen value="neuter">n.</gen>')[0] == EXIT_OK


def test_missing_schema_is_usage_error(chdir_fixtures):
    code, _, err = cli("validate", "--schema", "nope.rnc", "fig5.xml")
    assert code == EXIT_USAGE and "nope.rnc" in err


# -- exit codes and batches ----------------------------------------------------------------


def test_not_well_formed_stdin():
    code, out, err = cli("validate", stdin="<a><b></a>")
    assert code == EXIT_USAGE
    assert out == ""
    assert err == "<stdin>:1:9: error: mismatched tag [not-well-formed]\n"


def test_bad_file_does_not_abort_batch(tmp_path):
    (tmp_path / "a_bad.xml").write_text("<entry>", encoding="utf-8")
    shutil.copy(fixture_path("fig6.xml"), tmp_path / "b_fig6.xml")
    code, out, err = cli("convert", "--to", "iso1951", str(tmp_path))
    assert code == EXIT_USAGE
    assert "not-well-formed" in err
    assert "<DictionaryEntry>" in out


def test_missing_file_reports_io_error(tmp_path):
    code, _, err = cli("validate", str(tmp_path / "absent.xml"))
    assert code == EXIT_USAGE and "absent.xml" in err


@pytest.mark.parametrize(
    "args",
    [
        ("convert", "x.xml"),
        ("render", "x.xml"),
        ("convert", "--to", "pdf", "x.xml"),
        ("frobnicate",),
        (),
    ],
)
def test_usage_errors(args):
    assert cli(*args)[0] == EXIT_USAGE
    assert main(list(args)) == EXIT_USAGE


def test_config_invariants():
    with pytest.raises(Exception):
        CliConfig(command="convert").check()
    with pytest.raises(Exception):
        CliConfig(command="render").check()
    CliConfig(command="convert", to="tei").check()


def test_directory_inputs_sorted(tmp_path):
    (tmp_path / "sub").mkdir()
    for name in ("b.xml", "a.xml", "sub/c.xml", "notes.txt"):
        (tmp_path / name).write_text("<x/>", encoding="utf-8")
    found = [str(p) for p in expand_inputs([str(tmp_path)])]
    assert found == [str(tmp_path / "a.xml"), str(tmp_path / "b.xml"), str(tmp_path / "sub" / "c.xml")]
    assert expand_inputs([]) == ["-"]


# -- convert -------------------------------------------------------------------------------


def test_convert_fig6_to_iso(chdir_fixtures):
    code, out, err = cli("convert", "--to", "iso1951", "fig6.xml")
    assert (code, err) == (EXIT_OK, "")
    assert normalize_whitespace(parse(out).root) == normalize_whitespace(load_root("fig8.xml"))


def test_stdout_is_pure_payload(chdir_fixtures):
    # fig6 carries an unresolved ref; conversion output must still parse cleanly
    code, out, err = cli("convert", "--to", "tei", "fig6.xml")
    assert code == EXIT_OK
    assert parse(out).root == load_root("fig6.xml")


def test_convert_to_lmf_warns_on_stderr(chdir_fixtures):
    code, out, err = cli("convert", "--to", "lmf", "--diag-format", "json", "fig6.xml")
    assert code == EXIT_OK
    root = parse(out).root
    assert root.local == "LexicalEntry"
    codes = [json.loads(line)["code"] for line in err.splitlines()]
    assert codes == ["lmf-heuristic"]


def test_convert_multi_entry_document(tmp_path):
    doc = tmp_path / "dict.xml"
    doc.write_text("<dictionary>" + fixture_path("fig6.xml").read_text(encoding="utf-8")
                   + fixture_path("stub_E_S_165.xml").read_text(encoding="utf-8") + "</dictionary>",
                   encoding="utf-8")
    _, out, _ = cli("convert", "--to", "tei", str(doc))
    assert [e.local for e in parse(out).root.elements()] == ["entry", "entry"]
    _, out, _ = cli("convert", "--to", "iso1951", str(doc))
    assert [e.local for e in parse(out).root.elements()] == ["DictionaryEntry", "DictionaryEntry"]


def test_custom_ruleset(tmp_path, chdir_fixtures):
    rules = tmp_path / "orth.rules"
    rules.write_text("match orth => emit Headword { recurse }\nmatch entry => emit E { recurse }\n"
                     "match sense => drop\nmatch etym => drop\nmatch gramGrp => drop\nmatch usg => drop\n",
                     encoding="utf-8")
    code, out, _ = cli("convert", "--to", "iso1951", "--ruleset", str(rules), "fig6.xml")
    assert code == EXIT_OK
    assert [h.text_content() for h in parse(out).root.iter() if h.local == "Headword"] == ["Ski", "Schi"]


def test_bad_ruleset_is_usage_error(tmp_path, chdir_fixtures):
    rules = tmp_path / "bad.rules"
    rules.write_text("match => nothing\n", encoding="utf-8")
    assert cli("convert", "--to", "iso1951", "--ruleset", str(rules), "fig6.xml")[0] == EXIT_USAGE


def test_output_file(tmp_path, chdir_fixtures):
    target = tmp_path / "out.xml"
    code, out, _ = cli("convert", "--to", "iso1951", "-o", str(target), "fig6.xml")
    assert code == EXIT_OK and out == ""
    assert normalize_whitespace(parse_file(target).root) == normalize_whitespace(load_root("fig8.xml"))


def test_batch_determinism(chdir_fixtures):
    names = ["fig5.xml", "fig6.xml", "entryfree.xml"]
    per_file = {n: cli("convert", "--to", "iso1951", n)[1] for n in names}
    forward = cli("convert", "--to", "iso1951", *names)[1]
    backward = cli("convert", "--to", "iso1951", *reversed(names))[1]
    assert forward == "".join(per_file[n] for n in names)
    assert backward == "".join(per_file[n] for n in reversed(names))


# -- render --------------------------------------------------------------------------------


def test_render_print(chdir_fixtures):
    code, out, _ = cli("render", "--media", "print", "fig6.xml")
    assert code == EXIT_OK
    assert out.startswith("Ski, seit Anfang 20. Jh. meist Schi, m., ")


def test_render_flags(chdir_fixtures):
    _, out, _ = cli("render", "--media", "expanded", "--gender-style", "long", "--no-etym", "fig6.xml")
    assert "masculine" in out and "anord." not in out
    _, out, _ = cli("render", "--media", "print", "--no-citations", "fig5.xml")
    assert "am B. sein" not in out


def test_render_html_parses(chdir_fixtures):
    _, out, _ = cli("render", "--media", "html", "fig6.xml")
    assert parse(out).root.get("id") == "E_S_646"


# -- inspect -------------------------------------------------------------------------------


def test_inspect_fig6(chdir_fixtures):
    code, out, _ = cli("inspect", "--format", "json", "fig6.xml")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["ids"] == ["E_S_646", "S_S_646", "W_S_646"]
    assert report["refs"] == [{"target": "E_S_165", "resolved": False}]
    assert report["entries"] == 1
    assert report["elements"]["orth"] == 2


def test_inspect_text_format(chdir_fixtures):
    _, out, _ = cli("inspect", "fig6.xml")
    assert "E_S_165" in out and "unresolved" in out


def test_inspect_empty_dictionary():
    report = inspect_document(parse("<dictionary/>"))
    assert report["entries"] == 0 and report["refs"] == []


def test_inspect_two_entries_resolved():
    doc = parse("<dictionary>" + fixture_path("fig6.xml").read_text(encoding="utf-8")
                + fixture_path("stub_E_S_165.xml").read_text(encoding="utf-8") + "</dictionary>")
    report = inspect_document(doc)
    assert report["entries"] == 2
    assert all(r["resolved"] for r in report["refs"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lexmark", "validate", fx("badgen.xml")],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_ERRORS
    assert proc.stdout == ""
    assert "invalid-value" in proc.stderr
