#!/usr/bin/env python3
"""Regenerates the benchmark corpus under data/corpus/.

Six natural test photographs (shipped with scikit-image) are resized to
255x255 and quantized to at most 64 colors through the project's own
quantizer, so the corpus is reproducible from a clean checkout:

    cmake --build build
    python3 tools/make_corpus.py --cli build/tools/paletteforge
"""

import argparse
import pathlib
import subprocess
import tempfile

import numpy as np
import skimage.data
import skimage.transform

SOURCES = {
    "astronaut": "astronaut",
    "cat": "cat",
    "coffee": "coffee",
    "rocket": "rocket",
    "hubble": "hubble_deep_field",
    "ihc": "immunohistochemistry",
}

SIDE = 255


def write_ppm(path: pathlib.Path, pixels: np.ndarray) -> None:
    assert pixels.dtype == np.uint8 and pixels.ndim == 3 and pixels.shape[2] == 3
    with open(path, "wb") as f:
        f.write(f"P6\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode())
        f.write(pixels.tobytes())


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cli", default="build/tools/paletteforge",
                        help="path to the paletteforge binary")
    parser.add_argument("--out", default="data/corpus", help="corpus directory")
    parser.add_argument("--colors", type=int, default=64)
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    with tempfile.TemporaryDirectory() as tmp:
        tmp_dir = pathlib.Path(tmp)
        for name, loader in SOURCES.items():
            image = getattr(skimage.data, loader)()
            resized = skimage.transform.resize(image, (SIDE, SIDE), anti_aliasing=True)
            pixels = (np.clip(resized, 0.0, 1.0) * 255.0).round().astype(np.uint8)

            raw = tmp_dir / f"{name}.ppm"
            blob = tmp_dir / f"{name}.pfz"
            final = out_dir / f"{name}.ppm"
            write_ppm(raw, pixels)
            subprocess.run([args.cli, "compress", str(raw), str(blob),
                            "--colors", str(args.colors), "--strategy", "identity"],
                           check=True, capture_output=True)
            subprocess.run([args.cli, "decompress", str(blob), str(final)], check=True)
            print(f"wrote {final}")


if __name__ == "__main__":
    main()
