"""Natural valued quivers of blow-ups over a grid of multiplicities.

For each base algebra and each multiplicity vector n the script prints the
arrow counts t, the valuation of the natural valued quiver, the valued
Ext-quiver (which never changes) and whether both valuation formulas hold.
"""

import argparse
import itertools

from quiverforge.algebra import blow_up
from quiverforge.documents import build_algebra, corpus_dir, load_file
from quiverforge.natext import (natural_quiver, natural_valued_quiver, valued_ext_quiver, verify_ceil_formula,
                                verify_main_formula)


def survey(name, max_n):
    base = build_algebra(load_file(corpus_dir() / f"{name}.json"))
    verts = base.presentation.quiver.vertices
    print(f"{name}: ext quiver {valued_ext_quiver(base).quiver.edge_map()}")
    for ns in itertools.product(range(1, max_n + 1), repeat=len(verts)):
        a = blow_up(base, dict(zip(verts, ns)))
        nq = natural_quiver(a)
        ok = verify_main_formula(a).ok and verify_ceil_formula(a).ok
        print(f"  n={ns}  dim={a.dim:3d}  t={nq.t}  natural={natural_valued_quiver(a, nq).quiver.edge_map()}"
              f"  formulas={'ok' if ok else 'FAIL'}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", default=["a2", "kronecker"], help="bound-quiver corpus entries")
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    for name in args.names:
        survey(name, args.max_n)


if __name__ == "__main__":
    main()
