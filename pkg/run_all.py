"""
Run every applicable command for every built-in preset and save the CSVs.
"""

import os
import sys

from cli.commands import COMMANDS
from cli.main import EXIT_OK, main
from cli.presets import PRESETS

if __name__ == "__main__":
    if len(sys.argv) < 2:
        print("Usage: python run_all.py <output_dir> [--threads N]")
        sys.exit(1)

    output_dir = sys.argv[1]
    extra = sys.argv[2:]
    os.makedirs(output_dir, exist_ok=True)

    failures = 0
    for preset, sections in PRESETS.items():
        for command, (section_name, _) in COMMANDS.items():
            if section_name not in sections:
                continue
            out_path = os.path.join(output_dir, f"{preset}_{command}.csv")
            print(f"Processing {preset}: {command}")
            code = main([command, "--preset", preset, "--out", out_path, *extra])
            if code != EXIT_OK:
                failures += 1

    sys.exit(1 if failures else 0)
