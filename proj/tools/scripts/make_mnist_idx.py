#!/usr/bin/env python3
# Copyright 2026 The qadvlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Convert the digit JSON files of the npm `mnist` package into IDX files.

The npm package (https://www.npmjs.com/package/mnist) ships 10000 MNIST
digits as 28x28 float arrays in src/digits/<d>.json. This writes them back
to the canonical big-endian IDX layout (gzip-compressed) so the C++ loader
can read them like the original distribution files.

    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/scripts/make_mnist_idx.py package/src/digits data/mnist --digits 0 1
"""

import argparse
import gzip
import json
import pathlib
import struct


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("digits_dir", type=pathlib.Path)
    ap.add_argument("out_dir", type=pathlib.Path)
    ap.add_argument("--digits", type=int, nargs="+", default=list(range(10)))
    ap.add_argument("--prefix", default="mnist01")
    args = ap.parse_args()

    images = bytearray()
    labels = bytearray()
    count = 0
    for d in args.digits:
        data = json.loads((args.digits_dir / f"{d}.json").read_text())["data"]
        if len(data) % 784:
            raise SystemExit(f"digit {d}: payload is not a multiple of 784")
        for k in range(len(data) // 784):
            px = data[k * 784 : (k + 1) * 784]
            images += bytes(min(255, max(0, round(v * 255))) for v in px)
            labels.append(d)
            count += 1

    args.out_dir.mkdir(parents=True, exist_ok=True)
    img_path = args.out_dir / f"{args.prefix}-images-idx3-ubyte.gz"
    lbl_path = args.out_dir / f"{args.prefix}-labels-idx1-ubyte.gz"
    with gzip.GzipFile(img_path, "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x00000803, count, 28, 28))
        f.write(images)
    with gzip.GzipFile(lbl_path, "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x00000801, count))
        f.write(labels)
    print(f"wrote {count} images to {img_path} and {lbl_path}")


if __name__ == "__main__":
    main()
