#!/usr/bin/env python3
"""Print one PASS/FAIL line per acceptance criterion; exit 1 if any fails."""

import sys

from bordered_calc.verification import verify


def main() -> int:
    report = verify()
    for result in report.criteria:
        print(result.line())
        if result.error:
            print(f"    {result.error}")
        for check in result.checks:
            if not check.passed:
                print(f"    {check.name}: expected {check.expected}, got {check.computed}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
