"""Monte Carlo CHSH value vs trial count for the model and the baseline."""
import argparse

from hemifield.geometry import Axis
from hemifield.sampler import BELL_BOUND, TSIRELSON, chsh

STANDARD = [Axis.from_degrees(x) for x in (0, 90, 45, 135)]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--max-exp", type=int, default=6)
    args = ap.parse_args()

    print(f"{'n':>9} {'S_model':>9} {'se':>8} {'S_naive':>9} {'se':>8}")
    for e in range(2, args.max_exp + 1):
        n = 10 ** e
        m = chsh(*STANDARD, mode="montecarlo", n=n, seed=args.seed)
        b = chsh(*STANDARD, mode="montecarlo", n=n, seed=args.seed, baseline=True)
        print(f"{n:>9} {m.s_value:9.4f} {m.s_se:8.4f} {b.s_value:9.4f} {b.s_se:8.4f}")
    print(f"bell bound {BELL_BOUND}, tsirelson {TSIRELSON:.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
