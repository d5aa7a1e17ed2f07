"""Mod-p membership of exchanges, flips and a/b-side eyeglasses in the Powell image.

    python3 scripts/theorem_shadow.py --genera 3 4 --primes 2 3
"""
import argparse
import time

from powell_calc import modp
from powell_calc.scenarios import theorem_shadow_targets


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--genera", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()
    for g in args.genera:
        targets = theorem_shadow_targets(g)
        for p in args.primes:
            t0 = time.perf_counter()
            chain = modp.powell_subgroup(g, p)
            missing = [n for n, m in targets if not chain.contains(modp.reduce_mod_p(m, p))]
            print(f"g={g} p={p}  |P|={chain.order()}  |Sp|={modp.sp_order(g, p)}  "
                  f"targets={len(targets)}  non-members={missing or 'none'}  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
