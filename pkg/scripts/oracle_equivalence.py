"""Stabilizer-chain orders against breadth-first closure, for all |Sp(2g,p)| <= bound."""
import argparse
import time

from powell_calc import modp
from powell_calc import symplectic as sp
from powell_calc.bruteforce import Closure


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=float, default=2e6)
    args = ap.parse_args()
    primes = [n for n in range(2, 400) if all(n % d for d in range(2, int(n**0.5) + 1))]
    for g in (1, 2, 3):
        for p in primes:
            if modp.sp_order(g, p) > args.bound:
                continue
            groups = {"full": modp.full_generators(g, p)}
            if g >= 2:
                groups["powell"] = [modp.reduce_mod_p(m, p) for m in sp.powell_generators(g)]
            for name, gens in groups.items():
                t0 = time.perf_counter()
                chain = modp.StabilizerChain.build(gens, g, p)
                t1 = time.perf_counter()
                cl = Closure([m.entries for m in gens], p)
                t2 = time.perf_counter()
                flag = "ok" if cl.order == chain.order() else "MISMATCH"
                print(f"g={g} p={p:<4d}{name:7s} chain={chain.order():<9d}({t1 - t0:.3f}s) "
                      f"closure={cl.order:<9d}({t2 - t1:.2f}s, diameter {cl.diameter})  {flag}")


if __name__ == "__main__":
    main()
