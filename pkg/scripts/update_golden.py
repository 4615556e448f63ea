"""Regenerate the CLI golden files under tests/golden/ (run after a deliberate schema change)."""

import contextlib
import io
import json
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from dpcrit import cli  # noqa: E402
from test_cli import GOLDEN, GOLDEN_CASES, normalise  # noqa: E402


def main():
    with tempfile.TemporaryDirectory() as tmp:
        for name, argv in sorted(GOLDEN_CASES.items()):
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = cli.main(argv + ["--witness-dir", tmp])
            if code != 0:
                raise SystemExit(f"{name}: exit code {code}")
            data = normalise(json.loads(buf.getvalue()))
            (GOLDEN / f"{name}.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
            print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
