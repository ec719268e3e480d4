"""Regenerate the stored end-to-end CLI expectations under tests/fixtures/cli.

Run from the repository root after an intentional change to report formats:

    python3 scripts/regen_cli_fixtures.py

Review the diff before committing; the test suite compares against these
files byte for byte.
"""

from __future__ import annotations

import io
import json
import os
from pathlib import Path

from ccrgraph.cli import run

ROOT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

# name -> argv, relative to tests/fixtures
CASES: dict[str, list[str]] = {
    "classify_tree": ["classify", "--graph", "graphs/tree.json", "--field", "complex"],
    "classify_tree_text": ["classify", "--graph", "graphs/tree.json", "--format", "text"],
    "classify_fig8": ["classify", "--graph", "graphs/fig8.json"],
    "classify_loop_exit": ["classify", "--graph", "graphs/loop_exit.json"],
    "classify_loop_exit_text": ["classify", "--graph", "graphs/loop_exit.json", "--format", "text"],
    "classify_loop_exit_automaton": ["classify", "--graph", "graphs/loop_exit.json",
                                     "--method", "automaton"],
    "classify_single_loop": ["classify", "--graph", "graphs/single_loop.json"],
    "classify_loop_entrance": ["classify", "--graph", "graphs/loop_entrance.json"],
    "classify_path3_gf7": ["classify", "--graph", "graphs/path3.json", "--field", "GF(7)"],
    "classify_two_loops_dot": ["classify", "--graph", "graphs/two_loops.json", "--format", "dot"],
    "classify_product_tree_tree": ["classify", "--graph", "graphs/tree.json",
                                   "--graph", "graphs/tree.json"],
    "classify_product_tree_fig8": ["classify", "--graph", "graphs/tree.json",
                                   "--graph", "graphs/fig8.json"],
    "check_m_loop_exit": ["check-m", "--graph", "graphs/loop_exit.json"],
    "check_m_loop_exit_text": ["check-m", "--graph", "graphs/loop_exit.json", "--format", "text"],
    "check_n_fig8": ["check-n", "--graph", "graphs/fig8.json"],
    "check_n_fig8_automaton": ["check-n", "--graph", "graphs/fig8.json", "--method", "automaton"],
    "check_n_tree": ["check-n", "--graph", "graphs/tree.json"],
    "check_m_tree_dot": ["check-m", "--graph", "graphs/tree.json", "--format", "dot"],
    "orbits_loop_exit": ["orbits", "--graph", "graphs/loop_exit.json"],
    "orbits_loop_exit_text": ["orbits", "--graph", "graphs/loop_exit.json", "--format", "text"],
    "orbits_fig8": ["orbits", "--graph", "graphs/fig8.json"],
    "oracle_fig8_m": ["oracle", "--graph", "graphs/fig8.json", "--condition", "M", "--depth", "6"],
    "oracle_loop_exit_n": ["oracle", "--graph", "graphs/loop_exit.json", "--condition", "N"],
    "oracle_tree_m_text": ["oracle", "--graph", "graphs/tree.json", "--condition", "M",
                           "--format", "text"],
    "convolve_pair2_c2": ["convolve", "--groupoid", "groupoids/pair2_c2.json",
                          "--f", "groupoids/f.json", "--g", "groupoids/g.json"],
    "convolve_pair2_c2_gf5": ["convolve", "--groupoid", "groupoids/pair2_c2.json",
                              "--f", "groupoids/f.json", "--g", "groupoids/g.json",
                              "--field", "5"],
    "repn_chop_s3": ["repn-check", "chop", "--group", "S3", "--field", "7"],
    "repn_chop_s3_table": ["repn-check", "chop", "--group", "modules/s3_table.json", "--field", "7"],
    "repn_chop_c4_f3": ["repn-check", "chop", "--group", "C4", "--field", "3"],
    "repn_chop_c3_f5_split": ["repn-check", "chop", "--group", "C3", "--field", "5", "--split"],
    "repn_clifford_s3": ["repn-check", "clifford", "--group", "S3", "--subgroup", "rotations",
                         "--field", "7"],
    "repn_clifford_d4": ["repn-check", "clifford", "--group", "D4", "--subgroup", "rotations",
                         "--field", "9"],
    "repn_clifford_d4_text": ["repn-check", "clifford", "--group", "D4", "--subgroup",
                              "rotations", "--field", "9", "--format", "text"],
    "repn_amplification_c2": ["repn-check", "amplification", "--group", "C2", "--field", "5",
                              "--n", "3"],
    "repn_amplification_c4_f3": ["repn-check", "amplification", "--group", "C4", "--field", "3"],
    "repn_corner_m2": ["repn-check", "corner", "--module", "modules/m2.json",
                       "--idempotent", "modules/e11.json", "--field", "5"],
    "repn_corner_s3_averaging": ["repn-check", "corner", "--group", "S3", "--averaging",
                                 "rotations", "--field", "7"],
    "repn_corner_identity": ["repn-check", "corner", "--group", "S3", "--field", "7"],
    # errors
    "err_missing_file": ["classify", "--graph", "graphs/nope.json"],
    "err_garbage": ["classify", "--graph", "bad/garbage.json"],
    "err_dangling": ["check-n", "--graph", "bad/dangling.json"],
    "err_bogus_flag": ["classify", "--graph", "graphs/tree.json", "--bogus"],
    "err_no_subcommand": [],
    "err_depth_zero": ["oracle", "--graph", "graphs/tree.json", "--condition", "M", "--depth", "0"],
    "err_dot_for_oracle": ["oracle", "--graph", "graphs/tree.json", "--condition", "N",
                           "--format", "dot"],
    "err_dot_for_product": ["classify", "--graph", "graphs/tree.json", "--graph",
                            "graphs/fig8.json", "--format", "dot"],
    "err_clifford_not_normal": ["repn-check", "clifford", "--group", "S3", "--subgroup",
                                "012,102", "--field", "7"],
    "err_clifford_bad_char": ["repn-check", "clifford", "--group", "S3", "--subgroup",
                              "rotations", "--field", "3"],
    "err_clifford_not_split": ["repn-check", "clifford", "--group", "C4", "--subgroup", "all",
                               "--field", "3"],
    "err_corner_not_idempotent": ["repn-check", "corner", "--module", "modules/m2.json",
                                  "--idempotent", "modules/not_idempotent.json", "--field", "5"],
    "err_repn_no_group": ["repn-check", "chop"],
}


def capture(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = run(argv, out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def main() -> None:
    target = ROOT / "cli"
    target.mkdir(exist_ok=True)
    manifest = {}
    for name, argv in CASES.items():
        code, stdout, _ = capture(argv)
        manifest[name] = {"argv": argv, "exit": code}
        (target / f"{name}.out").write_text(stdout, encoding="utf-8")
    (target / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(manifest)} cases to {target}")


if __name__ == "__main__":
    main()
