"""Homology of Z^N odometers from exterior powers, checked against the Koszul tower."""

import argparse
from dataclasses import dataclass, field

from smalehom.linalg import IntMatrix
from smalehom.pipeline import k_rank_split, odometer_homology, odometer_level_tower


@dataclass
class Config:
    levels: int = 2
    matrices: list = field(default_factory=lambda: [
        [[2]], [[3]], [[2, 0], [0, 2]], [[1, 1], [-1, 1]], [[2, 0], [0, 3]], [[2, 0, 0], [0, 2, 0], [0, 0, 2]],
    ])


def main(cfg: Config) -> None:
    for rows in cfg.matrices:
        B = IntMatrix.from_rows(rows)
        H = odometer_homology(B)
        tower = odometer_level_tower(B, cfg.levels) if B.rows <= 2 else None
        ok = "n/a" if tower is None else ("yes" if tower.matches_exterior_powers() else "NO")
        print(f"B = {rows}")
        print("  H_n:", ", ".join(h.display() for h in H))
        print(f"  rank split (even, odd): {k_rank_split(H)}; tower maps are exterior powers: {ok}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=Config.levels)
    main(Config(levels=ap.parse_args().levels))
