"""Rewrite tests/golden/*.csv from the current CLI. Review the diff before committing."""
import contextlib
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from golden_cases import CASES, EXIT_CODES  # noqa: E402
from improved_hoeffding.cli import main  # noqa: E402


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    data = ROOT / "tests" / "data"
    gold = ROOT / "tests" / "golden"
    gold.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, out, err = run([a.format(data=data) for a in argv])
        if code != EXIT_CODES[name]:
            sys.exit(f"{name}: exit {code}, expected {EXIT_CODES[name]}: {err.strip()}")
        (gold / f"{name}.csv").write_text(out, encoding="utf-8")
        print(f"{name}: exit {code}, {len(out.splitlines())} lines")
