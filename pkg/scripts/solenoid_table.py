"""Stable homology, BF data and K-group pieces of the m-adic solenoid presets."""

import argparse
from dataclasses import dataclass

from smalehom.fiber import solenoid_preset
from smalehom.pipeline import ruelle_report, spectral_sheet, stable_homology


@dataclass
class Config:
    m_min: int = 2
    m_max: int = 8


def main(cfg: Config) -> None:
    print(f"{'m':>3}  {'H_0':<10} {'H_1':<4} {'BF column':<18} K_0 (split)")
    for m in range(cfg.m_min, cfg.m_max + 1):
        P = solenoid_preset(m)
        H = stable_homology(P)
        R = ruelle_report(P)
        col = ", ".join(str(R.determined[p]) for p in sorted(R.determined))
        sheet = spectral_sheet(H)
        assert (sheet.rank_bound_K0, sheet.rank_bound_K1) == (1, 1)
        print(f"{m:>3}  {H[0].display():<10} {H[1].display():<4} {col:<18} {R.split_k_group(0)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-min", type=int, default=Config.m_min)
    ap.add_argument("--m-max", type=int, default=Config.m_max)
    a = ap.parse_args()
    main(Config(a.m_min, a.m_max))
