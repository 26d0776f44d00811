"""Run the acceptance suite and print only the per-criterion verdict lines."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main():
    proc = subprocess.run([sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p",
                           "no:cacheprovider"], capture_output=True, text=True, cwd=ROOT)
    lines = [ln for ln in proc.stdout.splitlines() if " criterion " in ln and ln[:4] in ("PASS", "FAIL")]
    for ln in lines:
        print(ln)
    passed = sum(ln.startswith("PASS") for ln in lines)
    print(f"{passed}/{len(lines)} criteria pass")
    if proc.returncode and not lines:
        print(proc.stdout[-2000:], proc.stderr[-2000:], sep="\n")
    return proc.returncode


if __name__ == "__main__":
    raise SystemExit(main())
