#!/usr/bin/env python3
"""Generate the bundled gun-point-style synthetic dataset.

The real UCR GunPoint files are not redistributable with this repository, so
the bundled stand-in mimics their shape: two classes of smooth hand-motion
profiles (150 samples long, 50 train / 150 test, labels 1/2, tab-separated,
z-normalized per series). Class 1 ("gun") carries a dip before the rise
(drawing from a holster); class 2 ("point") rises later and smoothly. The
pipeline accepts the real UCR files through the same loader.

Deterministic: rerunning reproduces the committed files byte for byte.
"""
import argparse
import numpy as np


def make_series(cls, rng, length=150):
    t = np.arange(length, dtype=float)
    ramp = 0.6 * t / length
    if cls == 0:  # "gun": dip before onset
        t0 = rng.normal(38.0, 2.0)
        dip_amp = max(rng.normal(0.28, 0.09), 0.0)
        dip = -dip_amp * np.exp(-0.5 * ((t - rng.normal(26.5, 1.2)) / 3.5) ** 2)
    else:  # "point": later, smooth onset
        t0 = rng.normal(44.0, 2.0)
        dip = 0.0
    t1 = rng.normal(112.0, 4.0)
    w = rng.normal(5.0, 0.4)
    amp = rng.uniform(0.9, 1.1)
    base = 1.0 / (1.0 + np.exp(-(t - t0) / w)) - 1.0 / (1.0 + np.exp(-(t - t1) / w))
    y = amp * base + dip + ramp + rng.normal(0, 0.015, size=length)
    return (y - y.mean()) / y.std()


def write_split(path, rng, per_class):
    rows = []
    for cls in (0, 1):
        for _ in range(per_class):
            rows.append((cls + 1, make_series(cls, rng)))
    order = rng.permutation(len(rows))
    with open(path, "w") as f:
        for i in order:
            label, series = rows[i]
            f.write(str(label) + "\t" + "\t".join(f"{v:.6f}" for v in series) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-train", default="data/gunpoint_synth_TRAIN.tsv")
    ap.add_argument("--out-test", default="data/gunpoint_synth_TEST.tsv")
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    write_split(args.out_train, rng, 25)
    write_split(args.out_test, rng, 75)
    print(f"wrote {args.out_train} (50 series) and {args.out_test} (150 series)")


if __name__ == "__main__":
    main()
