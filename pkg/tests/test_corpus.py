#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for labeled corpus generation

Author: Dexter
Date: 2025
"""

import collections

import pytest

from sealkit.attacks.corpus import (
    attack_grid, build_corpus, default_labels_path, list_images, load_samples, read_labels,
)
from sealkit.attacks.harness import default_rect
from sealkit.core.exceptions import SealkitIOError, ValidationError
from sealkit.core.models import ClassLabel
from sealkit.verification.features import FEATURE_HEADER, read_feature_rows


class TestAttackGrid:
    def test_fourteen_variants(self):
        grid = attack_grid(default_rect(64, 64))
        assert len(grid) == 14
        counts = collections.Counter(label for _, label in grid)
        assert counts == {ClassLabel.CLEAN: 2, ClassLabel.UNINTENTIONAL: 5,
                          ClassLabel.INTENTIONAL: 2, ClassLabel.BOTH: 5}

    def test_labels_match_kinds(self):
        for spec, label in attack_grid(default_rect(64, 64)):
            tampered = spec.kind in ('insert', 'insert_then_jpeg')
            compressed = spec.qf is not None and spec.qf < 100
            expected = {
                (False, False): ClassLabel.CLEAN,
                (False, True): ClassLabel.UNINTENTIONAL,
                (True, False): ClassLabel.INTENTIONAL,
                (True, True): ClassLabel.BOTH,
            }[(tampered, compressed)]
            assert label == expected

    def test_names_unique(self):
        names = [spec.name for spec, _ in attack_grid(default_rect(64, 64))]
        assert len(set(names)) == len(names)


class TestBuildCorpus:
    def test_rows_and_labels(self, image_dir, key, tmp_path):
        out = str(tmp_path / 'corpus.csv')
        count = build_corpus(list_images(str(image_dir)), key, out)
        assert count == 28
        labels = read_labels(default_labels_path(out))
        rows = read_feature_rows(out)
        assert [path for path, _ in rows] == list(labels)
        assert collections.Counter(labels.values()) == {1: 4, 2: 10, 3: 4, 4: 10}
        assert rows[0][0].endswith('src0.png#clean')

    def test_deterministic(self, image_dir, key, tmp_path):
        paths = list_images(str(image_dir))
        first = tmp_path / 'a.csv'
        second = tmp_path / 'b.csv'
        build_corpus(paths, key, str(first))
        build_corpus(paths, key, str(second), workers=2)
        assert first.read_text() == second.read_text()

    def test_tampered_variants_score_higher(self, image_dir, key, tmp_path):
        out = str(tmp_path / 'corpus.csv')
        build_corpus(list_images(str(image_dir)), key, out)
        features = dict(read_feature_rows(out))
        for path in list_images(str(image_dir)):
            assert features[f"{path}#insert"].f9 > features[f"{path}#clean"].f9

    def test_single_image_uses_flipped_donor(self, image_dir, key, tmp_path):
        out = str(tmp_path / 'one.csv')
        assert build_corpus(list_images(str(image_dir))[:1], key, out) == 14

    def test_empty_corpus_writes_headers(self, key, tmp_path):
        out = tmp_path / 'empty.csv'
        labels = tmp_path / 'labels.csv'
        assert build_corpus([], key, str(out), labels_csv=str(labels)) == 0
        assert out.read_text().strip() == ','.join(FEATURE_HEADER)
        assert labels.read_text().strip() == 'path,label'

    def test_load_samples(self, image_dir, key, tmp_path):
        out = str(tmp_path / 'corpus.csv')
        build_corpus(list_images(str(image_dir)), key, out)
        samples = load_samples(out, default_labels_path(out))
        assert len(samples) == 28
        assert all(len(x) == 7 for x, _ in samples)

    def test_invalid_workers(self, image_dir, key, tmp_path):
        with pytest.raises(ValidationError):
            build_corpus(list_images(str(image_dir)), key, str(tmp_path / 'x.csv'), workers=0)


class TestLabels:
    def test_default_labels_path(self):
        assert default_labels_path('/tmp/run/corpus.csv') == '/tmp/run/corpus.labels.csv'

    def test_missing_label(self, tmp_path):
        features = tmp_path / 'f.csv'
        labels = tmp_path / 'l.csv'
        features.write_text(','.join(FEATURE_HEADER) + '\nx.png,0,0,0,0,0,0,0,0,0\n')
        labels.write_text('path,label\ny.png,1\n')
        with pytest.raises(ValidationError):
            load_samples(str(features), str(labels))

    def test_bad_label_value(self, tmp_path):
        labels = tmp_path / 'l.csv'
        labels.write_text('path,label\ny.png,7\n')
        with pytest.raises(ValidationError):
            read_labels(str(labels))

    def test_missing_directory(self, tmp_path):
        with pytest.raises(SealkitIOError):
            list_images(str(tmp_path / 'nope'))
