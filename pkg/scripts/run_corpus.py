"""Verify every bundled corpus document and print one timing line per entry."""

import argparse
import time
from pathlib import Path

from quiverforge.cli import verify_document
from quiverforge.documents import InputError, corpus_dir, load_file


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("dir", nargs="?", default=None, help="directory of .json documents (default: bundled corpus)")
    ap.add_argument("-v", "--verbose", action="store_true", help="print the full report for each entry")
    args = ap.parse_args()
    root = Path(args.dir) if args.dir else corpus_dir()
    total = failed = 0
    for path in sorted(root.glob("*.json")):
        total += 1
        t0 = time.perf_counter()
        try:
            rep = verify_document(load_file(path), path.name)
        except InputError as exc:
            failed += 1
            print(f"{path.name:40s} INPUT ERROR {exc}")
            continue
        ms = 1000 * (time.perf_counter() - t0)
        failed += not rep.ok
        print(f"{path.name:40s} {'PASS' if rep.ok else 'FAIL'} {len(rep.checks):4d} checks {ms:8.1f} ms")
        if args.verbose or not rep.ok:
            print(rep.to_text())
    print(f"{total - failed}/{total} entries pass")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
