"""Shared fixtures: a directory of synthetic digit files in IDX layout."""

import pytest

from phaseneuron.datasets import save_idx_images, save_idx_labels

import synth_digits


@pytest.fixture(scope="session")
def idx_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("idx")
    train = synth_digits.make_digit_data(80, seed=3)
    test = synth_digits.make_digit_data(40, seed=9)
    save_idx_images(train.images, root / "train-images-idx3-ubyte")
    save_idx_labels(train.labels, root / "train-labels-idx1-ubyte")
    save_idx_images(test.images, root / "t10k-images-idx3-ubyte")
    save_idx_labels(test.labels, root / "t10k-labels-idx1-ubyte")
    return root
