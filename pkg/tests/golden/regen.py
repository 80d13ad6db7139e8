"""Rewrite the expected outputs from the current build: python3 tests/golden/regen.py"""

import json
import os
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).parent


def run_case(argv, seed="0"):
    env = dict(os.environ, PYTHONHASHSEED=seed, MAW_COLOR="1")
    proc = subprocess.run(
        [sys.executable, "-m", "maw.cli", *argv], cwd=HERE, env=env, capture_output=True, text=True
    )
    return proc.returncode, proc.stdout, proc.stderr


def render(status, out, err):
    return f"status: {status}\n--- stdout\n{out}--- stderr\n{err}"


if __name__ == "__main__":
    for name, argv in json.loads((HERE / "cases.json").read_text()).items():
        (HERE / "expected" / f"{name}.txt").write_text(render(*run_case(argv)))
