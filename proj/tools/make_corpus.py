"""Regenerate the 512x512 8-bit grayscale test corpus from scikit-image sample data."""
import pathlib
import sys

import numpy as np
import skimage.data
from skimage.color import rgb2gray
from skimage.transform import resize

SOURCES = ["camera", "astronaut", "coffee", "chelsea"]


def to_gray512(a):
    if a.ndim == 3:
        a = rgb2gray(a[..., :3])
    else:
        a = a.astype(np.float64) / 255.0
    if a.shape != (512, 512):
        a = resize(a, (512, 512), anti_aliasing=True)
    return np.clip(np.rint(a * 255.0), 0, 255).astype(np.uint8)


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in SOURCES:
        img = to_gray512(getattr(skimage.data, name)())
        with open(out / f"{name}.pgm", "wb") as f:
            f.write(b"P5\n512 512\n255\n")
            f.write(img.tobytes())


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/corpus")
