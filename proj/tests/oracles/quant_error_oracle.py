# Copyright 2026 The kltsteg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent quantization-error oracle for the segment codec.

Uses numpy's symmetric eigensolver (not Jacobi) and re-derives every
quantization step from the formulas, then reports the worst per-entry
reconstruction error over random segments. Its output pins thresholds
used by the C++ tests.
"""
import numpy as np


def round_half_away(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def encode_decode(seg, k):
    rows, n = seg.shape
    mean = seg.mean(axis=1)
    mean_q = round_half_away(mean * 256.0)
    a_mean = mean_q / 256.0
    centered = seg - mean[:, None]
    cov = centered @ centered.T / n
    w, v = np.linalg.eigh(cov)
    order = np.argsort(-w, kind="stable")
    v = v[:, order][:, :k]
    p = v.T @ (seg - a_mean[:, None])
    lo = np.float32(p.min()); hi = np.float32(p.max())
    if lo > p.min(): lo = np.nextafter(lo, np.float32(-np.inf))
    if hi < p.max(): hi = np.nextafter(hi, np.float32(np.inf))
    lo = float(lo); hi = float(hi)
    if hi == lo:
        pq = np.zeros_like(p)
    else:
        pq = np.clip(round_half_away((p - lo) / (hi - lo) * 255.0), 0, 255)
    vq = round_half_away(v * 32767.0)
    ap = pq * (hi - lo) / 255.0 + lo
    av = vq / 32767.0
    rec = av @ ap + a_mean[:, None]
    rec = np.clip(round_half_away(rec), 0, 255)
    return rec


def main():
    rng = np.random.default_rng(20261014)
    worst = 0.0
    for _ in range(2000):
        seg = rng.integers(0, 256, size=(6, 8)).astype(np.float64)
        rec = encode_decode(seg, 6)
        worst = max(worst, np.abs(rec - seg).max())
    print("full-rank 6x8 worst abs error over 2000 segments:", worst)

    maes = []
    for _ in range(200):
        msg = rng.integers(0, 256, size=(16, 16, 3)).astype(np.float64)
        plane = msg.transpose(0, 2, 1).reshape(48, 16)
        rec = np.vstack([encode_decode(plane[i:i + 12], 12) for i in range(0, 48, 12)])
        maes.append(np.abs(rec - plane).mean())
    print("16x16 s=4 full-rank MAE: max", max(maes), "mean", np.mean(maes))


if __name__ == "__main__":
    main()
