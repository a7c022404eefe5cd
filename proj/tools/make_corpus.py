# Copyright 2026 The CSIC Authors. All Rights Reserved.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""Regenerates the pinned grayscale test corpus under data/.

Each source image is converted to luma, center-cropped square, resized to
256x256, and written as binary PGM (P5, maxval 255). The generated files are
checked in; rerun this only to rebuild them from scratch.
"""

import os

import numpy as np
from skimage import data
from skimage.transform import resize

CORPUS = ["camera", "coins", "coffee", "chelsea", "astronaut", "text", "rocket", "page"]


def to_gray_square(img, side):
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        img = img @ np.array([0.299, 0.587, 0.114])
    h, w = img.shape
    s = min(h, w)
    img = img[(h - s) // 2 : (h - s) // 2 + s, (w - s) // 2 : (w - s) // 2 + s]
    img = resize(img, (side, side), anti_aliasing=True, preserve_range=True)
    if img.max() <= 1.5:
        img = img * 255.0
    return np.clip(np.round(img), 0, 255).astype(np.uint8)


def write_pgm(path, img):
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (img.shape[1], img.shape[0]))
        f.write(img.tobytes())


def main():
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")
    corpus_dir = os.path.join(root, "corpus")
    fixture_dir = os.path.join(root, "fixtures")
    os.makedirs(corpus_dir, exist_ok=True)
    os.makedirs(fixture_dir, exist_ok=True)
    for name in CORPUS:
        img = to_gray_square(getattr(data, name)(), 256)
        write_pgm(os.path.join(corpus_dir, name + ".pgm"), img)
        print("wrote", name)
    write_pgm(os.path.join(fixture_dir, "camera64.pgm"), to_gray_square(data.camera(), 64))
    print("wrote camera64 fixture")


if __name__ == "__main__":
    main()
