#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Classifier commands

`train`, `classify`, `crossval` and `keygen`.

Author: Dexter
Date: 2025
"""

import argparse
import logging
import secrets

from sealkit.attacks.corpus import load_samples
from sealkit.classification.svm import cross_validate, load_model, predict_many, save_model, train
from sealkit.commands.common import require_files, require_output
from sealkit.core.config import config
from sealkit.core.exceptions import SealkitError
from sealkit.core.models import KEY_HEX_LENGTH
from sealkit.verification.features import read_feature_rows


# 配置日志
logger = logging.getLogger(__name__)


def _add_hyperparameters(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--c', type=float, default=config.SVM_C,
                        help=f'regularization parameter (default: {config.SVM_C:g})')
    parser.add_argument('--gamma', type=float, default=config.SVM_GAMMA,
                        help=f'RBF width (default: {config.SVM_GAMMA:.4f})')


def register(subparsers) -> None:
    trainer = subparsers.add_parser('train', help='train the one-vs-rest classifier')
    trainer.add_argument('--features', required=True)
    trainer.add_argument('--labels', required=True)
    trainer.add_argument('--out', required=True, help='model file')
    _add_hyperparameters(trainer)
    trainer.set_defaults(handler=handle_train, parser=trainer)

    classifier = subparsers.add_parser('classify', help='print one predicted label per feature row')
    classifier.add_argument('--model', required=True)
    classifier.add_argument('--features', required=True)
    classifier.set_defaults(handler=handle_classify, parser=classifier)

    crossval = subparsers.add_parser('crossval', help='stratified k-fold cross-validation report')
    crossval.add_argument('--features', required=True)
    crossval.add_argument('--labels', required=True)
    crossval.add_argument('--folds', type=int, default=config.CV_FOLDS,
                          help=f'number of folds (default: {config.CV_FOLDS})')
    _add_hyperparameters(crossval)
    crossval.set_defaults(handler=handle_crossval, parser=crossval)

    keygen = subparsers.add_parser('keygen', help='print a fresh random key')
    keygen.set_defaults(handler=handle_keygen, parser=keygen)


def handle_train(args: argparse.Namespace) -> int:
    require_files([args.features, args.labels])
    require_output(args.out)
    try:
        model = train(load_samples(args.features, args.labels), args.c, args.gamma)
        save_model(model, args.out)
    except SealkitError as e:
        logger.error(f"训练失败: {e}")
        raise
    return 0


def handle_classify(args: argparse.Namespace) -> int:
    require_files([args.model, args.features])
    try:
        model = load_model(args.model)
        rows = read_feature_rows(args.features)
        labels = predict_many(model, [features.classifier_inputs() for _, features in rows])
    except SealkitError as e:
        logger.error(f"分类失败: {e}")
        raise
    for label in labels:
        print(label)
    return 0


def handle_crossval(args: argparse.Namespace) -> int:
    require_files([args.features, args.labels])
    try:
        report = cross_validate(load_samples(args.features, args.labels), args.folds, args.c, args.gamma)
    except SealkitError as e:
        logger.error(f"交叉验证失败: {e}")
        raise
    print(report.render())
    return 0


def handle_keygen(args: argparse.Namespace) -> int:
    print(secrets.token_hex(KEY_HEX_LENGTH // 2))
    return 0
