"""Typecheck every program in programs/ and print its outcome and exit code."""

import io
import pathlib
import sys

from idxcheck.cli import main as cli_main

PROGRAMS = pathlib.Path(__file__).resolve().parent.parent / "programs"


def main() -> int:
    for path in sorted(PROGRAMS.glob("*.idx")):
        out, err = io.StringIO(), io.StringIO()
        code = cli_main([str(path)], out, err)
        first = (err.getvalue() or out.getvalue()).strip().splitlines()
        print(f"{path.name:28} exit {code}  {first[-1] if first else ''}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
