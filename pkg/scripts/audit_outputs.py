#!/usr/bin/env python3
"""
Sweep output audit script.

Usage:
    python scripts/audit_outputs.py out/
    python scripts/audit_outputs.py out/sweep_N3.csv out/sweep_N6.csv
"""
import argparse
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli.audit import audit_directory, audit_sweep_csv


def main():
    parser = argparse.ArgumentParser(description='Re-validate P = j*V in sweep CSV files')
    parser.add_argument('paths', nargs='+', help='Output directories or sweep CSV files')
    args = parser.parse_args()

    results = {}
    for raw in args.paths:
        path = Path(raw)
        if path.is_dir():
            results.update(audit_directory(path))
        else:
            results[path.name] = audit_sweep_csv(path)

    error_count = 0
    for name, problems in results.items():
        status = '✓' if not problems else '✗'
        print(f"{status} {name}")
        for problem in problems:
            print(f"    {problem}")
        error_count += len(problems)

    print(f"\n{'=' * 60}")
    print(f"Summary: {len(results)} files audited, {error_count} problems")
    return 1 if error_count else 0


if __name__ == '__main__':
    sys.exit(main())
