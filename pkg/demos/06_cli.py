"""Driving the command-line tool from Python.

The same commands work from a shell as ``fracstab certify system.json``.
"""

import json
import tempfile
from pathlib import Path

from fracstab.cli import run

system = {
    "alpha": 1.4,
    "lower": [[-2.2, 0.9], [-1.1, -2.2]],
    "upper": [[-1.8, 1.1], [-0.9, -1.8]],
}
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "system.json"
    path.write_text(json.dumps(system))
    for argv in (["certify", path], ["falsify", path, "--samples", "2000"], ["falsify", path, "--samples", "2000", "--json"]):
        print(f"$ fracstab {' '.join(map(str, argv))}")
        code = run([str(a) for a in argv])
        print(f"(exit code {code})\n")
