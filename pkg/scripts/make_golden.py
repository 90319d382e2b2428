#!/usr/bin/env python3
"""Regenerate src/locglob/data/golden.json from the brute-force oracles.

Equivalent to `locglob reproduce --oracle` redirected into the data file;
run it after an intentional change to the derived expectations, then review
the diff."""

import pathlib

from locglob.reproduce import golden_bytes, oracle_golden

TARGET = pathlib.Path(__file__).resolve().parent.parent / "src" / "locglob" / "data" / "golden.json"


def main():
    content = golden_bytes(oracle_golden())
    TARGET.write_text(content)
    print("wrote %s (%d bytes)" % (TARGET, len(content)))


if __name__ == "__main__":
    main()
