#!/usr/bin/env python3
# Copyright 2026 The cogload Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Rebuilds the catch22 conformance vectors. Expected values come from the
# pycatch22 package (pip install pycatch22==0.5.0), which is independent of
# this code base. The two "published_*" inputs are the reference series that
# ship with the canonical C implementation; pass its testData/basic directory
# to include them.
import os
import sys

import numpy as np
import pycatch22

HERE = os.path.dirname(os.path.abspath(__file__))


def write(name, x):
    x = np.asarray(x, dtype=float)
    np.savetxt(os.path.join(HERE, name + ".input.txt"), x, fmt="%.17g")
    res = pycatch22.catch22_all(list(x))
    with open(os.path.join(HERE, name + ".expected.txt"), "w") as f:
        for n, v in zip(res["names"], res["values"]):
            f.write(f"{n} {v:.17g}\n")


def ecg_like(rng, fs=250.0, seconds=3.0):
    t = np.arange(int(fs * seconds)) / fs
    x = np.zeros_like(t)
    beat = 0.1
    while beat < seconds:
        for off, amp, width in [(-0.2, 0.12, 0.025), (-0.05, -0.1, 0.01), (0.0, 1.0, 0.01),
                                (0.04, -0.2, 0.01), (0.3, 0.3, 0.04)]:
            x += amp * np.exp(-0.5 * ((t - beat - off) / width) ** 2)
        beat += 0.8 + 0.03 * rng.standard_normal()
    return x + 0.02 * rng.standard_normal(t.size)


def main():
    rng = np.random.default_rng(20260101)
    write("noise750", rng.standard_normal(750))
    write("noise384", rng.standard_normal(384))
    write("ecg750", ecg_like(rng))
    t = np.arange(750)
    write("sine10", np.sin(2 * np.pi * t / 75.0))
    ar = np.zeros(750)
    e = rng.standard_normal(750)
    for i in range(1, 750):
        ar[i] = 0.8 * ar[i - 1] + e[i]
    write("ar750", ar)
    if len(sys.argv) > 1:
        for src, dst in [("test.txt", "published_basic"), ("testSinusoid.txt", "published_sinusoid")]:
            write(dst, np.loadtxt(os.path.join(sys.argv[1], src)))


if __name__ == "__main__":
    main()
