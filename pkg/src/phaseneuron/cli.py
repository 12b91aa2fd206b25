"""Command line interface.

Subcommands map onto the experiments the package reproduces:

* ``activate``    -- one activation, or a table of random images scored
                     against a fixed weight vector (analytic and sampled);
* ``learn-single`` -- SPSA training of the weights toward one target input;
* ``classify``    -- train/test on a bundled 2-D problem (band or circles)
                     or an imported CSV dataset, with a decision-boundary
                     grid export;
* ``mnist``       -- zeros-vs-ones digit experiments from IDX files
                     (fixed-weight or pooled-learn);
* ``noise-sweep`` -- exact vs Monte Carlo mean activation under uniform
                     phase noise.

Every command accepts ``--check`` (run its built-in self test; exit code 4
on failure), ``--seed``, ``--out``, and ``--config`` (JSON with SPSA keys).
Exit codes: 0 ok, 2 usage, 3 data/file error, 4 failed self check.
Result files embed the resolved configuration and a format version; CSV
files carry them in a leading ``#`` comment line.  Output bytes depend
only on the arguments and seed, never on timing or paths.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .datasets import (
    BIAS_4D,
    DIRECT_2D,
    FORMAT_VERSION,
    IMAGE,
    DataFormatError,
    LabeledDataset,
    encode_features,
    filter_digit_pair,
    generate_2d_dataset,
    generate_circle_dataset,
    load_dataset_csv,
    load_digit_data,
    mean_pool,
    pad_image,
    save_dataset_csv,
    save_dataset_manifest,
    split_dataset,
)
from .encoding import normalize_grayscale
from .kernels import backend_name
from .learning import (
    SpsaConfig,
    assign_label,
    classification_accuracy,
    cost_labels,
    cost_single_target,
    spsa_minimize,
    train_classifier,
)
from .neuron import (
    activation_closed_form,
    activation_sampled,
    activation_statevector,
    pairwise_activation_matrix,
)
from .noise import (
    NoiseConfig,
    mean_activation_identical,
    mean_activation_small_width,
    monte_carlo_noisy_activation,
)

MNIST_DIR_ENV = "PHASENEURON_MNIST_DIR"

CHECKERBOARD = (math.pi / 2.0, 0.0, 0.0, math.pi / 2.0)
SINGLE_TARGET = (math.pi / 5.0, 0.0, math.pi / 3.0, 0.1)

_SPSA_KEYS = ("iterations", "a0", "c0", "A", "alpha", "gamma", "seed", "batch_size")


class CheckFailure(Exception):
    """A --check assertion did not hold."""


# ---------------------------------------------------------------------------
# Small IO helpers (deterministic bytes: sorted keys, repr floats, no paths)

def _pyval(value):
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_pyval(v) for v in value]
    if isinstance(value, (list, tuple)):
        return [_pyval(v) for v in value]
    if isinstance(value, dict):
        return {k: _pyval(v) for k, v in value.items()}
    return value


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(_pyval(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _open_csv(path, config):
    fh = open(path, "w", newline="")
    meta = {"format_version": FORMAT_VERSION, "config": _pyval(config)}
    fh.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    return fh, csv.writer(fh)


def _fmt(x):
    return repr(float(x))


def _parse_float_list(text):
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"could not parse {text!r} as comma-separated numbers")


def _parse_int_list(text):
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"could not parse {text!r} as comma-separated integers")


def _parse_phases(text):
    """A comma-separated phase list, or a path to an intensity grid file.

    Grid files hold 0..255 intensities (CSV or whitespace separated, one
    image row per line) and pass through normalize_grayscale.
    """
    if os.path.exists(text):
        try:
            grid = np.loadtxt(text, delimiter=",", ndmin=2)
        except ValueError:
            grid = np.loadtxt(text, ndmin=2)
        return normalize_grayscale(grid)
    return np.asarray(_parse_float_list(text), dtype=np.float64)


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# Config file + SPSA resolution

def _load_config_file(path):
    if path is None:
        return {}
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError(f"config file {path}: expected a JSON object")
    unknown = sorted(set(data) - set(_SPSA_KEYS))
    if unknown:
        raise ValueError(
            f"config file {path}: unknown keys {unknown}; known keys: {list(_SPSA_KEYS)}"
        )
    return data


def _resolve_seed(args, file_cfg):
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    if "seed" in file_cfg:
        return int(file_cfg["seed"])
    return 0


def _resolve_spsa(args, file_cfg, seed, default_iterations, default_batch, default_a0=0.5):
    """Defaults < config file < explicit flags.

    --batch-size 0 (or JSON null) means full batch.  Training randomness
    (initialization, batch draws, perturbations) is seeded with the
    experiment seed + 1; dataset generation uses the experiment seed
    itself.
    """

    def pick(name, default):
        flag = getattr(args, name.replace("-", "_"), None)
        if flag is not None:
            return flag
        return file_cfg.get(name, default)

    batch = pick("batch_size", default_batch)
    if batch is not None and int(batch) == 0:
        batch = None
    return SpsaConfig(
        iterations=int(pick("iterations", default_iterations)),
        a0=float(pick("a0", default_a0)),
        c0=float(pick("c0", 0.2)),
        A=float(pick("A", 10.0)),
        alpha=float(pick("alpha", 0.602)),
        gamma=float(pick("gamma", 0.101)),
        seed=seed + 1,
        batch_size=None if batch is None else int(batch),
    )


def _spsa_echo(cfg: SpsaConfig):
    return {
        "iterations": cfg.iterations,
        "a0": cfg.a0,
        "c0": cfg.c0,
        "A": cfg.A,
        "alpha": cfg.alpha,
        "gamma": cfg.gamma,
        "batch_size": cfg.batch_size,
    }


def _write_trace(path, trace, config):
    fh, writer = _open_csv(path, config)
    with fh:
        writer.writerow(["iteration", "cost"])
        for iteration, cost in trace:
            writer.writerow([iteration, _fmt(cost)])


def _train_with_restarts(train_set, spsa, threshold, restarts, test_set=None):
    """Best of several training runs, scored by full-training-set label cost.

    The thresholded 0/1 cost surface is flat wherever no sample's
    activation crosses the threshold under a perturbation, so a single
    run can stall at its starting point.  Restart j shifts only the
    training seed (spsa.seed + j); the dataset stays fixed.  Ties keep
    the earliest restart so reruns pick the same winner.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    for j in range(restarts):
        result = train_classifier(
            train_set, replace(spsa, seed=spsa.seed + j), threshold, test_set
        )
        score = cost_labels(train_set, result.final_weights, threshold)
        if best is None or score < best[0]:
            best = (score, j, result)
    return best


# ---------------------------------------------------------------------------
# activate

def _add_spsa_flags(p):
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--a0", type=float, default=None)
    p.add_argument("--c0", type=float, default=None)
    p.add_argument("--A", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument(
        "--batch-size",
        type=int,
        default=None,
        help="samples per cost evaluation; 0 = full batch",
    )
    p.add_argument("--config", default=None, help="JSON file with SPSA keys")


def run_activate(args):
    out = _out_dir(args)
    seed = 0 if args.seed is None else int(args.seed)
    weight = (
        np.asarray(CHECKERBOARD)
        if args.weight is None
        else _parse_phases(args.weight)
    )

    if args.random is not None:
        if args.random < 1:
            raise ValueError("--random needs a positive image count")
        if weight.size != 4:
            raise ValueError("--random scores 2x2 images; weight needs 4 phases")
        config = {
            "command": "activate-random",
            "count": args.random,
            "shots": args.shots,
            "seed": seed,
            "weight": list(weight),
        }
        rng = np.random.Generator(np.random.PCG64(seed))
        images = rng.integers(0, 256, size=(args.random, 2, 2))
        rows = []
        for i in range(args.random):
            phases = normalize_grayscale(images[i])
            analytic = activation_closed_form(phases, weight)
            # Per-image shot seed: seed + 1 + i (documented, reproducible).
            sampled = activation_sampled(phases, weight, args.shots, seed + 1 + i)
            rows.append((i, images[i].ravel(), analytic, sampled.value))

        csv_path = out / "activation.csv"
        fh, writer = _open_csv(csv_path, config)
        with fh:
            writer.writerow(["image", "p00", "p01", "p10", "p11", "analytic", "sampled"])
            for i, pixels, analytic, sampled in rows:
                writer.writerow(
                    [i, *[int(p) for p in pixels], _fmt(analytic), _fmt(sampled)]
                )

        analytic_values = [r[2] for r in rows]
        sampled_values = [r[3] for r in rows]
        best_analytic = int(np.argmax(analytic_values))
        best_sampled = int(np.argmax(sampled_values))
        _write_json(
            out / "activation.json",
            {
                "format_version": FORMAT_VERSION,
                "config": config,
                "best_analytic_image": best_analytic,
                "best_sampled_image": best_sampled,
                "max_analytic": max(analytic_values),
                "kernel_backend": backend_name(),
            },
        )
        print(f"wrote {csv_path} ({args.random} images)")

        if args.check:
            for i, _, analytic, sampled in rows:
                bound = 3.0 * math.sqrt(analytic * (1.0 - analytic) / args.shots)
                if abs(sampled - analytic) > bound:
                    raise CheckFailure(
                        f"image {i}: sampled {sampled:.6f} deviates from analytic "
                        f"{analytic:.6f} by more than 3 sigma ({bound:.6f})"
                    )
            if best_sampled != best_analytic:
                raise CheckFailure(
                    f"best sampled image {best_sampled} is not the analytic best "
                    f"{best_analytic}"
                )
            print("check ok: all samples within 3 sigma, best image agrees")
        return

    if args.input is None:
        raise ValueError("activate needs --input PHASES (or --random COUNT)")
    phases = _parse_phases(args.input)
    config = {
        "command": "activate",
        "method": args.method,
        "shots": args.shots if args.method == "sampled" else None,
        "seed": seed,
        "input": list(phases),
        "weight": list(weight),
    }
    if args.method == "closed-form":
        value = activation_closed_form(phases, weight)
    elif args.method == "statevector":
        value = activation_statevector(phases, weight).value
    else:
        value = activation_sampled(phases, weight, args.shots, seed).value
    _write_json(
        out / "activation.json",
        {
            "format_version": FORMAT_VERSION,
            "config": config,
            "activation": value,
            "kernel_backend": backend_name(),
        },
    )
    print(f"activation = {value!r}")
    if args.check:
        reference = activation_closed_form(phases, weight)
        if args.method == "statevector" and abs(value - reference) > 1e-10:
            raise CheckFailure(
                f"statevector activation {value!r} differs from closed form "
                f"{reference!r}"
            )
        if args.method == "sampled":
            bound = 3.0 * math.sqrt(max(reference * (1.0 - reference), 1e-12) / args.shots)
            if abs(value - reference) > bound:
                raise CheckFailure(
                    f"sampled activation {value!r} deviates from closed form "
                    f"{reference!r} by more than 3 sigma"
                )
        print("check ok")


# ---------------------------------------------------------------------------
# learn-single

def run_learn_single(args):
    out = _out_dir(args)
    file_cfg = _load_config_file(args.config)
    seed = _resolve_seed(args, file_cfg)
    # The cost dips under 0.01 within a few hundred iterations, but the
    # activation itself needs a long tail of small steps to cross 0.99.
    spsa = _resolve_spsa(args, file_cfg, seed, default_iterations=8000, default_batch=None)
    target = (
        np.asarray(SINGLE_TARGET)
        if args.target is None
        else _parse_phases(args.target)
    )

    init_rng = np.random.Generator(np.random.PCG64(seed))
    init = init_rng.uniform(0.0, math.pi / 2.0, size=target.size)
    result = spsa_minimize(lambda w: cost_single_target(target, w), init, spsa)

    best_cost = min(cost for _, cost in result.cost_trace)
    final_activation = activation_closed_form(target, result.final_weights)
    config = {
        "command": "learn-single",
        "target": list(target),
        "seed": seed,
        "spsa": _spsa_echo(spsa),
    }
    _write_trace(out / "cost_trace.csv", result.cost_trace, config)
    _write_json(
        out / "result.json",
        {
            "format_version": FORMAT_VERSION,
            "config": config,
            "final_weights": list(result.final_weights),
            "best_cost": best_cost,
            "final_activation": final_activation,
        },
    )
    print(f"best cost {best_cost!r}, activation {final_activation!r}")
    if args.check:
        if best_cost >= 0.01:
            raise CheckFailure(f"best cost {best_cost!r} did not reach 0.01")
        if final_activation <= 0.99:
            raise CheckFailure(f"activation {final_activation!r} did not exceed 0.99")
        print("check ok: converged")


# ---------------------------------------------------------------------------
# classify

def run_classify(args):
    out = _out_dir(args)
    file_cfg = _load_config_file(args.config)
    seed = _resolve_seed(args, file_cfg)

    if args.dataset_file is not None:
        if args.check:
            raise ValueError("--check is defined for the bundled problems only")
        encoding = args.encoding or DIRECT_2D
        dataset = load_dataset_csv(args.dataset_file, encoding)
        generator = "file"
        gen_params = {"encoding": encoding}
        default_batch = None
        default_iterations = 300
        default_a0 = 0.5
    elif args.problem == "band":
        dataset = generate_2d_dataset(args.count, seed)
        generator = "band"
        gen_params = {"count": args.count, "band": 0.4, "margin": 0.12}
        default_batch = None
        default_iterations = 300
        default_a0 = 0.5
    else:  # circles
        dataset = generate_circle_dataset(args.count, seed)
        generator = "circles"
        gen_params = {
            "count": args.count,
            "radius": 0.5,
            "center": [math.pi / 4, math.pi / 4],
            "margin": 0.1,
        }
        default_batch = 20
        default_iterations = 600
        default_a0 = 1.0

    spsa = _resolve_spsa(args, file_cfg, seed, default_iterations, default_batch, default_a0)
    train, test = split_dataset(dataset, args.test_fraction)
    config = {
        "command": "classify",
        "problem": generator,
        "generator_params": gen_params,
        "threshold": args.threshold,
        "test_fraction": args.test_fraction,
        "resolution": args.resolution,
        "restarts": args.restarts,
        "seed": seed,
        "spsa": _spsa_echo(spsa),
    }

    train_cost, selected, result = _train_with_restarts(
        train, spsa, args.threshold, args.restarts, test
    )
    metrics = result.test_metrics

    save_dataset_csv(train, out / "train.csv", config)
    save_dataset_csv(test, out / "test.csv", config)
    save_dataset_manifest(out / "dataset.json", generator, gen_params, seed)
    _write_trace(out / "cost_trace.csv", result.cost_trace, config)

    # Decision boundary: activation and label over a uniform grid, exactly
    # resolution**2 rows.
    axis = np.linspace(0.0, math.pi / 2.0, args.resolution)
    fh, writer = _open_csv(out / "decision_grid.csv", config)
    with fh:
        writer.writerow(["x1", "x2", "activation", "label"])
        for x1 in axis:
            for x2 in axis:
                phases = encode_features((x1, x2), dataset.encoding)
                f = activation_closed_form(phases, result.final_weights)
                writer.writerow(
                    [_fmt(x1), _fmt(x2), _fmt(f), assign_label(f, args.threshold)]
                )

    _write_json(
        out / "metrics.json",
        {
            "format_version": FORMAT_VERSION,
            "config": config,
            "final_weights": list(result.final_weights),
            "selected_restart": selected,
            "train_cost": train_cost,
            "test_cost": metrics["cost"],
            "test_accuracy": metrics["accuracy"],
            "threshold": metrics["threshold"],
            "train_size": len(train),
            "test_size": len(test),
        },
    )
    print(
        f"test cost {metrics['cost']!r}, accuracy {metrics['accuracy']!r} "
        f"({len(train)} train / {len(test)} test, restart {selected})"
    )
    if args.check:
        if args.problem == "band":
            if metrics["cost"] != 0.0:
                raise CheckFailure(f"band test cost {metrics['cost']!r}, expected exactly 0.0")
            print("check ok: band classified exactly")
        else:
            if metrics["accuracy"] < 0.95:
                raise CheckFailure(
                    f"circles accuracy {metrics['accuracy']!r} below 0.95"
                )
            print("check ok: circles accuracy >= 0.95")


# ---------------------------------------------------------------------------
# mnist

_IDX_FILES = {
    "train_images": "train-images-idx3-ubyte",
    "train_labels": "train-labels-idx1-ubyte",
    "test_images": "t10k-images-idx3-ubyte",
    "test_labels": "t10k-labels-idx1-ubyte",
}


def _find_idx_file(data_dir: Path, stem: str) -> Path:
    for name in (stem, stem + ".gz"):
        candidate = data_dir / name
        if candidate.exists():
            return candidate
    raise DataFormatError(
        f"missing {stem}[.gz] in {data_dir} (set --data-dir or ${MNIST_DIR_ENV})"
    )


def _load_mnist_dir(data_dir):
    if data_dir is None:
        raise DataFormatError(
            f"no digit data directory: pass --data-dir or set ${MNIST_DIR_ENV}"
        )
    root = Path(data_dir)
    if not root.is_dir():
        raise DataFormatError(f"digit data directory {root} does not exist")
    train = load_digit_data(
        _find_idx_file(root, _IDX_FILES["train_images"]),
        _find_idx_file(root, _IDX_FILES["train_labels"]),
    )
    test = load_digit_data(
        _find_idx_file(root, _IDX_FILES["test_images"]),
        _find_idx_file(root, _IDX_FILES["test_labels"]),
    )
    return train, test


def _image_phase_rows(images, pad_value):
    return np.stack(
        [normalize_grayscale(pad_image(img, pad_value=pad_value)) for img in images]
    )


def _pooled_phase_rows(images, pool_side):
    return np.stack(
        [normalize_grayscale(mean_pool(img, pool_side)) for img in images]
    )


def run_mnist(args):
    out = _out_dir(args)
    file_cfg = _load_config_file(args.config)
    seed = _resolve_seed(args, file_cfg)
    data_dir = args.data_dir or os.environ.get(MNIST_DIR_ENV)
    train, test = _load_mnist_dir(data_dir)

    test_images, test_labels = filter_digit_pair(test)
    limit = min(args.limit, len(test_labels))
    test_images = test_images[:limit]
    test_labels = test_labels[:limit]

    if args.mode == "fixed-weight":
        config = {
            "command": "mnist-fixed-weight",
            "threshold": args.threshold,
            "limit": args.limit,
            "pad_value": args.pad_value,
            "seed": seed,
        }
        train_ones = np.flatnonzero(train.labels == 1)
        if train_ones.size == 0:
            raise DataFormatError("training set holds no images labeled 1")
        weight_index = int(train_ones[0])
        weight = normalize_grayscale(
            pad_image(train.images[weight_index], pad_value=args.pad_value)
        )

        rows = _image_phase_rows(test_images, args.pad_value)
        hits = 0
        for phases, label in zip(rows, test_labels):
            f = activation_closed_form(phases, weight)
            hits += int(assign_label(f, args.threshold) == int(label))
        accuracy = hits / len(test_labels)
        cost = 1.0 - accuracy  # mean squared 0/1 label error

        # Similarity of a few zeros and ones from the test set.
        zeros = test_images[test_labels == 0][: args.confusion_count]
        ones = test_images[test_labels == 1][: args.confusion_count]
        sample_rows = _image_phase_rows(np.concatenate([zeros, ones]), args.pad_value)
        matrix = pairwise_activation_matrix(sample_rows)
        names = [f"zero_{i}" for i in range(len(zeros))] + [
            f"one_{i}" for i in range(len(ones))
        ]
        fh, writer = _open_csv(out / "confusion_matrix.csv", config)
        with fh:
            writer.writerow(["image", *names])
            for name, row in zip(names, matrix):
                writer.writerow([name, *[_fmt(v) for v in row]])

        _write_json(
            out / "metrics.json",
            {
                "format_version": FORMAT_VERSION,
                "config": config,
                "accuracy": accuracy,
                "cost": cost,
                "threshold": args.threshold,
                "weight_train_index": weight_index,
                "evaluated": len(test_labels),
                "kernel_backend": backend_name(),
            },
        )
        print(f"fixed-weight accuracy {accuracy!r} on {len(test_labels)} images")
        if args.check:
            if accuracy < 0.95:
                raise CheckFailure(f"fixed-weight accuracy {accuracy!r} below 0.95")
            print("check ok: accuracy >= 0.95")
        return

    # pooled-learn
    spsa = _resolve_spsa(args, file_cfg, seed, default_iterations=400, default_batch=20)
    config = {
        "command": "mnist-pooled-learn",
        "threshold": args.threshold,
        "limit": args.limit,
        "pool_side": args.pool_side,
        "restarts": args.restarts,
        "seed": seed,
        "spsa": _spsa_echo(spsa),
    }
    train_images, train_labels = filter_digit_pair(train)
    train_ds = LabeledDataset(
        _pooled_phase_rows(train_images, args.pool_side), train_labels, IMAGE
    )
    test_ds = LabeledDataset(
        _pooled_phase_rows(test_images, args.pool_side), test_labels, IMAGE
    )
    train_cost, selected, result = _train_with_restarts(
        train_ds, spsa, args.threshold, args.restarts, test_ds
    )
    metrics = result.test_metrics

    _write_trace(out / "cost_trace.csv", result.cost_trace, config)
    _write_json(
        out / "metrics.json",
        {
            "format_version": FORMAT_VERSION,
            "config": config,
            "final_weights": list(result.final_weights),
            "selected_restart": selected,
            "train_cost": train_cost,
            "accuracy": metrics["accuracy"],
            "cost": metrics["cost"],
            "threshold": metrics["threshold"],
            "train_size": len(train_ds),
            "evaluated": len(test_ds),
            "kernel_backend": backend_name(),
        },
    )
    print(
        f"pooled-learn accuracy {metrics['accuracy']!r} on {len(test_ds)} images "
        f"(restart {selected})"
    )
    if args.check:
        if metrics["accuracy"] < 0.75:
            raise CheckFailure(f"pooled accuracy {metrics['accuracy']!r} below 0.75")
        print("check ok: accuracy >= 0.75")


# ---------------------------------------------------------------------------
# noise-sweep

def run_noise_sweep(args):
    out = _out_dir(args)
    seed = 0 if args.seed is None else int(args.seed)
    sizes = _parse_int_list(args.sizes)
    widths = _parse_float_list(args.widths)
    if any(n < 1 for n in sizes):
        raise ValueError("qubit counts must be >= 1")
    if any(w < 0 for w in widths):
        raise ValueError("noise widths must be >= 0")
    config = {
        "command": "noise-sweep",
        "sizes": sizes,
        "widths": widths,
        "trials": args.trials,
        "seed": seed,
    }

    rows = []
    row_index = 0
    for n in sizes:
        zeros = np.zeros(1 << n)
        for width in widths:
            exact = mean_activation_identical(n, width)
            approx = mean_activation_small_width(n, width)
            estimate = monte_carlo_noisy_activation(
                zeros, zeros, NoiseConfig(width, args.trials, seed + row_index)
            )
            rows.append((n, width, exact, approx, estimate.mean, estimate.std_error))
            row_index += 1

    csv_path = out / "noise_sweep.csv"
    fh, writer = _open_csv(csv_path, config)
    with fh:
        writer.writerow(
            ["num_qubits", "width", "exact", "approx", "mc_mean", "mc_stderr"]
        )
        for n, width, exact, approx, mc_mean, mc_stderr in rows:
            writer.writerow(
                [n, _fmt(width), _fmt(exact), _fmt(approx), _fmt(mc_mean), _fmt(mc_stderr)]
            )
    _write_json(
        out / "noise_sweep.json",
        {"format_version": FORMAT_VERSION, "config": config, "rows": len(rows)},
    )
    print(f"wrote {csv_path} ({len(rows)} rows)")

    if args.check:
        for n, width, exact, approx, mc_mean, mc_stderr in rows:
            if width > 0 and abs(mc_mean - exact) > 3.0 * mc_stderr:
                raise CheckFailure(
                    f"n={n} width={width}: Monte Carlo {mc_mean!r} is more than "
                    f"3 standard errors from the exact mean {exact!r}"
                )
            if width <= 0.2 and abs(approx - exact) > 1e-4:
                raise CheckFailure(
                    f"n={n} width={width}: small-width approximation off by "
                    f"{abs(approx - exact)!r}"
                )
        print("check ok: Monte Carlo within 3 sigma, approximation within 1e-4")


# ---------------------------------------------------------------------------
# Parser and entry point

def build_parser():
    parser = argparse.ArgumentParser(
        prog="phaseneuron",
        description="Phase-encoded quantum neuron: simulate, train, analyze.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("activate", help="evaluate the neuron's activation")
    p.add_argument("--input", default=None, help="phases 'a,b,...' or intensity grid file")
    p.add_argument("--weight", default=None, help="default: checkerboard pi/2,0,0,pi/2")
    p.add_argument(
        "--method",
        choices=["closed-form", "statevector", "sampled"],
        default="closed-form",
    )
    p.add_argument("--shots", type=int, default=8192)
    p.add_argument("--random", type=int, default=None, metavar="COUNT",
                   help="score COUNT random 2x2 images instead of --input")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="results")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=run_activate)

    p = sub.add_parser("learn-single", help="SPSA toward one target input")
    p.add_argument("--target", default=None, help="default: pi/5,0,pi/3,0.1")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="results")
    p.add_argument("--check", action="store_true")
    _add_spsa_flags(p)
    p.set_defaults(func=run_learn_single)

    p = sub.add_parser("classify", help="train/test a 2-D classifier")
    p.add_argument("--problem", choices=["band", "circles"], default="band")
    p.add_argument("--dataset-file", default=None, help="x1,x2,label CSV")
    p.add_argument("--encoding", choices=[DIRECT_2D, BIAS_4D], default=None,
                   help="encoding for --dataset-file")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--test-fraction", type=float, default=0.3)
    p.add_argument("--threshold", type=float, default=0.95)
    p.add_argument("--resolution", type=int, default=60)
    p.add_argument("--restarts", type=int, default=8,
                   help="training runs; the lowest-training-cost one is kept")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="results")
    p.add_argument("--check", action="store_true")
    _add_spsa_flags(p)
    p.set_defaults(func=run_classify)

    p = sub.add_parser("mnist", help="zeros-vs-ones digit experiments")
    p.add_argument("--mode", choices=["fixed-weight", "pooled-learn"],
                   default="fixed-weight")
    p.add_argument("--data-dir", default=None,
                   help=f"directory with the four IDX files (default ${MNIST_DIR_ENV})")
    p.add_argument("--threshold", type=float, default=0.85)
    p.add_argument("--limit", type=int, default=2060,
                   help="max test images evaluated")
    p.add_argument("--pad-value", type=int, default=0)
    p.add_argument("--pool-side", type=int, default=4)
    p.add_argument("--confusion-count", type=int, default=4)
    p.add_argument("--restarts", type=int, default=4,
                   help="pooled-learn training runs; best training cost kept")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="results")
    p.add_argument("--check", action="store_true")
    _add_spsa_flags(p)
    p.set_defaults(func=run_mnist)

    p = sub.add_parser("noise-sweep", help="mean activation under phase noise")
    p.add_argument("--sizes", default="1,2,3", help="qubit counts, comma separated")
    p.add_argument("--widths", default="0.1,0.5,1.0,2.0",
                   help="noise widths, comma separated")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="results")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=run_noise_sweep)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 4
    except DataFormatError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
