"""Scan of states with fixed Hilbert-Schmidt total correlations and their ordering inversions.

    python scripts/constant_total_scan.py --outdir results
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from bellcorr import cli
from bellcorr.statespace import ScanSpec, inversions, scan


@dataclass
class ScanExperiment:
    c3: float = 0.2
    radius: float = 0.5
    c1_min: float = -0.5
    c1_max: float = 0.5
    steps: int = 101
    outdir: str = "results"

    def spec(self) -> ScanSpec:
        return ScanSpec(self.c3, self.radius, self.c1_min, self.c1_max, self.steps)


def run(cfg: ScanExperiment) -> None:
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    opts = ["--c3", repr(cfg.c3), "--radius", repr(cfg.radius), "--c1-min", repr(cfg.c1_min)]
    opts += ["--c1-max", repr(cfg.c1_max), "--scan-steps", str(cfg.steps)]
    jobs = {"scan.csv": ["scan"]} | {f"inversions_{q}.csv": ["inversions", q] for q in "DCT"}
    for filename, cmd in jobs.items():
        if cli.main([*cmd, *opts, "-o", str(out / filename)]) != 0:
            raise SystemExit(f"{' '.join(cmd)} failed")

    spec = cfg.spec()
    rows = scan(spec)
    t = np.array([r.T for _, r in rows])
    tg2 = np.array([r.T_g2 for _, r in rows])
    print(f"2T_g in [{tg2.min():.12g}, {tg2.max():.12g}], T in [{t.min():.6f}, {t.max():.6f}]")
    for q in "DCT":
        print(f"{q}: {len(inversions(spec, q))} inverted pairs")
    print(f"CSV written to {out}/")


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f in fields(ScanExperiment):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    run(ScanExperiment(**vars(parser.parse_args(argv))))


if __name__ == "__main__":
    main()
