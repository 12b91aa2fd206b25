"""Datasets: synthetic 2-D generators, grayscale digit handling, IDX files.

Feature vectors meet the neuron through an encoding tag:

* ``direct-2d`` -- (x1, x2) becomes the two phases of a single qubit;
* ``bias-4d``   -- (x1, x2) becomes (0, x1, x2, 0) on two qubits, leaving
  the first and last weight phases free (the last acts as a trainable
  bias);
* ``image``     -- the row already is a phase vector (images are padded or
  pooled and normalized upstream).

IDX is the classic big-endian digit-file format; parsing is strict and
re-serializing reproduces the input bytes exactly.
"""

from __future__ import annotations

import csv
import gzip
import json
import math
import struct
import warnings
from dataclasses import dataclass

import numpy as np

FORMAT_VERSION = 1

IMAGE_MAGIC = 2051
LABEL_MAGIC = 2049

DIRECT_2D = "direct-2d"
BIAS_4D = "bias-4d"
IMAGE = "image"

_ENCODINGS = (DIRECT_2D, BIAS_4D, IMAGE)


class DataFormatError(ValueError):
    """Malformed data file (bad magic, truncated payload, bad CSV row)."""


class IdxFormatError(DataFormatError):
    """Malformed IDX file; the message names the offending byte offset."""


@dataclass
class LabeledDataset:
    samples: np.ndarray  # (m, d) float rows
    labels: np.ndarray  # (m,) ints in {0, 1}
    encoding: str

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.samples.ndim != 2:
            raise ValueError(f"samples must be 2-D, got shape {self.samples.shape}")
        if self.labels.shape != (self.samples.shape[0],):
            raise ValueError("one label per sample required")
        if self.encoding not in _ENCODINGS:
            raise ValueError(f"unknown encoding {self.encoding!r}")

    def __len__(self):
        return self.samples.shape[0]


def _warn_if_outside_quarter_turn(v: np.ndarray):
    # The generators produce features in [0, pi/2]; anything else still
    # encodes fine (phases wrap), so flag it instead of failing.
    if v.min() < 0.0 or v.max() > np.pi / 2.0:
        warnings.warn(
            "feature outside [0, pi/2]; the encoding accepts it but the "
            "bundled problems never produce such values",
            RuntimeWarning,
            stacklevel=3,
        )


def encode_2d(x) -> np.ndarray:
    """(x1, x2) as the two phases of a single qubit."""
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (2,):
        raise ValueError(f"expected 2 features, got shape {v.shape}")
    _warn_if_outside_quarter_turn(v)
    return v.copy()


def encode_2d_bias(x) -> np.ndarray:
    """(x1, x2) as (0, x1, x2, 0) on two qubits.

    The zero slots pin the data side; the matching weight vector
    (0, w1, w2, b) then carries two plain weights and a bias phase.
    """
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (2,):
        raise ValueError(f"expected 2 features, got shape {v.shape}")
    _warn_if_outside_quarter_turn(v)
    return np.array([0.0, v[0], v[1], 0.0])


def encode_features(x, encoding: str) -> np.ndarray:
    if encoding == DIRECT_2D:
        return encode_2d(x)
    if encoding == BIAS_4D:
        return encode_2d_bias(x)
    if encoding == IMAGE:
        return np.asarray(x, dtype=np.float64)
    raise ValueError(f"unknown encoding {encoding!r}")


# ---------------------------------------------------------------------------
# Synthetic 2-D generators

def generate_2d_dataset(
    count: int, seed: int, band: float = 0.4, margin: float = 0.12
) -> LabeledDataset:
    """Uniform points on [0, pi/2]^2, label 1 inside the diagonal band
    |x1 - x2| < band.

    Points with ||x1 - x2| - band| <= margin are re-drawn.  The gap keeps
    the problem exactly solvable by thresholding the single-qubit
    activation at t = 0.95: that activation depends only on x1 - x2 and
    its level set has the fixed width 2*arccos(sqrt(t)) ~= 0.451 (only the
    center is trainable), so a clearance around the label boundary is what
    makes a zero-error threshold classifier reachable.
    """
    if count < 2:
        raise ValueError("count must be >= 2")
    if band <= 0 or margin < 0 or band - margin <= 0:
        raise ValueError(f"need 0 <= margin < band, got band={band} margin={margin}")
    rng = np.random.Generator(np.random.PCG64(seed))
    rows = []
    while len(rows) < count:
        x = rng.uniform(0.0, np.pi / 2.0, size=2)
        if abs(abs(x[0] - x[1]) - band) <= margin:
            continue
        rows.append(x)
    samples = np.array(rows)
    labels = (np.abs(samples[:, 0] - samples[:, 1]) < band).astype(np.int64)
    return LabeledDataset(samples, labels, DIRECT_2D)


def generate_circle_dataset(
    count: int,
    seed: int,
    radius: float = 0.5,
    center: tuple[float, float] = (np.pi / 4.0, np.pi / 4.0),
    margin: float = 0.1,
) -> LabeledDataset:
    """Uniform points on [0, pi/2]^2, label 1 strictly inside the circle.

    Points with ||x - center| - radius| <= margin are re-drawn.  The
    thresholded two-qubit activation carves out an oval, not a circle, so
    a clearance annulus keeps the mismatch between the two shapes away
    from the data and a high test accuracy reachable.
    """
    if count < 2:
        raise ValueError("count must be >= 2")
    if radius <= 0 or margin < 0 or radius - margin <= 0:
        raise ValueError(f"need 0 <= margin < radius, got radius={radius} margin={margin}")
    rng = np.random.Generator(np.random.PCG64(seed))
    rows = []
    while len(rows) < count:
        x = rng.uniform(0.0, np.pi / 2.0, size=2)
        dist = math.hypot(x[0] - center[0], x[1] - center[1])
        if abs(dist - radius) <= margin:
            continue
        rows.append(x)
    samples = np.array(rows)
    dist = np.hypot(samples[:, 0] - center[0], samples[:, 1] - center[1])
    labels = (dist < radius).astype(np.int64)
    return LabeledDataset(samples, labels, BIAS_4D)


def split_dataset(dataset: LabeledDataset, test_fraction: float):
    """Deterministic head/tail split (rows are already i.i.d. random)."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    m = len(dataset)
    num_test = max(1, int(round(m * test_fraction)))
    num_train = m - num_test
    if num_train < 1:
        raise ValueError("split leaves no training samples")
    train = LabeledDataset(
        dataset.samples[:num_train], dataset.labels[:num_train], dataset.encoding
    )
    test = LabeledDataset(
        dataset.samples[num_train:], dataset.labels[num_train:], dataset.encoding
    )
    return train, test


# ---------------------------------------------------------------------------
# Dataset CSV / manifest serialization

def save_dataset_csv(dataset: LabeledDataset, path, config: dict | None = None):
    """Write rows as x1,x2,label with a leading provenance comment line."""
    if dataset.samples.shape[1] != 2:
        raise ValueError("CSV export covers 2-feature datasets")
    meta = {"format_version": FORMAT_VERSION, "config": config or {}}
    with open(path, "w", newline="") as fh:
        fh.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", "label"])
        for row, label in zip(dataset.samples, dataset.labels):
            writer.writerow([repr(float(row[0])), repr(float(row[1])), int(label)])


def load_dataset_csv(path, encoding: str = DIRECT_2D) -> LabeledDataset:
    """Read a dataset written by save_dataset_csv (or any x1,x2,label CSV)."""
    samples = []
    labels = []
    with open(path, newline="") as fh:
        plain = (line for line in fh if not line.startswith("#"))
        reader = csv.reader(plain)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x1", "x2", "label"]:
            raise DataFormatError(f"{path}: expected header x1,x2,label, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise DataFormatError(f"{path}: line {lineno}: expected 3 fields")
            try:
                samples.append([float(row[0]), float(row[1])])
                labels.append(int(row[2]))
            except ValueError as exc:
                raise DataFormatError(f"{path}: line {lineno}: {exc}") from None
    if not samples:
        raise DataFormatError(f"{path}: no data rows")
    return LabeledDataset(np.array(samples), np.array(labels), encoding)


def save_dataset_manifest(path, generator: str, params: dict, seed: int):
    """JSON manifest naming the generator, its parameters, and the seed."""
    manifest = {
        "format_version": FORMAT_VERSION,
        "generator": generator,
        "params": params,
        "seed": seed,
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Grayscale digit images (IDX files, padding, pooling)

@dataclass
class DigitData:
    images: np.ndarray  # (count, rows, cols) uint8
    labels: np.ndarray  # (count,) uint8


def _read_bytes(path):
    # Accepts plain files and their .gz twins (the usual distribution form).
    name = str(path)
    if name.endswith(".gz"):
        with gzip.open(name, "rb") as fh:
            return fh.read()
    with open(name, "rb") as fh:
        return fh.read()


def load_idx_images(path) -> np.ndarray:
    """Parse an IDX image file into a (count, rows, cols) uint8 array."""
    data = _read_bytes(path)
    if len(data) < 16:
        raise IdxFormatError(
            f"{path}: image header truncated at byte {len(data)}, need 16"
        )
    magic, count, rows, cols = struct.unpack(">IIII", data[:16])
    if magic != IMAGE_MAGIC:
        raise IdxFormatError(
            f"{path}: bad magic {magic} at byte 0, expected {IMAGE_MAGIC}"
        )
    expected = 16 + count * rows * cols
    if len(data) != expected:
        raise IdxFormatError(
            f"{path}: payload is {len(data)} bytes, expected {expected} "
            f"(mismatch from byte {min(len(data), expected)})"
        )
    pixels = np.frombuffer(data, dtype=np.uint8, offset=16)
    return pixels.reshape(count, rows, cols).copy()


def load_idx_labels(path) -> np.ndarray:
    """Parse an IDX label file into a (count,) uint8 array."""
    data = _read_bytes(path)
    if len(data) < 8:
        raise IdxFormatError(
            f"{path}: label header truncated at byte {len(data)}, need 8"
        )
    magic, count = struct.unpack(">II", data[:8])
    if magic != LABEL_MAGIC:
        raise IdxFormatError(
            f"{path}: bad magic {magic} at byte 0, expected {LABEL_MAGIC}"
        )
    expected = 8 + count
    if len(data) != expected:
        raise IdxFormatError(
            f"{path}: payload is {len(data)} bytes, expected {expected} "
            f"(mismatch from byte {min(len(data), expected)})"
        )
    return np.frombuffer(data, dtype=np.uint8, offset=8).copy()


def save_idx_images(images, path):
    """Inverse of load_idx_images; the round trip is byte-exact."""
    arr = np.ascontiguousarray(images, dtype=np.uint8)
    if arr.ndim != 3:
        raise ValueError(f"expected (count, rows, cols), got shape {arr.shape}")
    with open(path, "wb") as fh:
        fh.write(struct.pack(">IIII", IMAGE_MAGIC, *arr.shape))
        fh.write(arr.tobytes())


def save_idx_labels(labels, path):
    """Inverse of load_idx_labels; the round trip is byte-exact."""
    arr = np.ascontiguousarray(labels, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError(f"expected a flat label array, got shape {arr.shape}")
    with open(path, "wb") as fh:
        fh.write(struct.pack(">II", LABEL_MAGIC, arr.shape[0]))
        fh.write(arr.tobytes())


def load_digit_data(images_path, labels_path) -> DigitData:
    """Load a matching image/label IDX pair."""
    images = load_idx_images(images_path)
    labels = load_idx_labels(labels_path)
    if images.shape[0] != labels.shape[0]:
        raise IdxFormatError(
            f"{images_path} holds {images.shape[0]} images but "
            f"{labels_path} holds {labels.shape[0]} labels"
        )
    return DigitData(images, labels)


def filter_digit_pair(data: DigitData, zero_digit: int = 0, one_digit: int = 1):
    """Images of two digit classes with labels remapped to 0/1 (order kept)."""
    if zero_digit == one_digit:
        raise ValueError("the two digits must differ")
    mask = (data.labels == zero_digit) | (data.labels == one_digit)
    images = data.images[mask]
    labels = (data.labels[mask] == one_digit).astype(np.int64)
    return images, labels


def pad_image(image, padded_side: int = 32, pad_value: int = 0) -> np.ndarray:
    """Center an image in a larger square filled with ``pad_value``.

    The default takes 28x28 digits to 32x32 (a 2 pixel border) so the pixel
    count becomes a power of two; background intensity 0 keeps the border
    at phase 0.
    """
    img = np.asarray(image)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError(f"expected a square image, got shape {img.shape}")
    side = img.shape[0]
    if side > padded_side or (padded_side - side) % 2:
        raise ValueError(
            f"cannot center a {side}-pixel image in {padded_side} pixels"
        )
    if not 0 <= pad_value <= 255:
        raise ValueError(f"pad_value must be in [0, 255], got {pad_value}")
    border = (padded_side - side) // 2
    out = np.full((padded_side, padded_side), pad_value, dtype=img.dtype)
    out[border : border + side, border : border + side] = img
    return out


def block_means(image, out_side: int) -> np.ndarray:
    """Float means of the out_side x out_side grid of equal square blocks."""
    img = np.asarray(image, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError(f"expected a square image, got shape {img.shape}")
    side = img.shape[0]
    if out_side < 1 or side % out_side:
        raise ValueError(f"{side} pixels do not split into {out_side} blocks")
    b = side // out_side
    return img.reshape(out_side, b, out_side, b).mean(axis=(1, 3))


def mean_pool(image, out_side: int = 4) -> np.ndarray:
    """Block-average an image down to out_side x out_side integer intensities.

    Block means are rounded half up (x.5 goes to the larger intensity), a
    fixed choice so pooled pixels are platform independent.
    """
    means = block_means(image, out_side)
    return np.floor(means + 0.5).astype(np.int64)
