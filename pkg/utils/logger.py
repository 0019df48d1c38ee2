"""Настройка логирования"""
import logging
import sys

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(name=None, level=None, fmt=None, stream=None):
    """
    Создать и настроить логгер.

    Повторный вызов не добавляет второй обработчик, только меняет уровень.
    По умолчанию пишет в stderr: stdout CLI занят результатом.
    """
    logger = logging.getLogger(name)
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logger.setLevel(level if level is not None else logging.INFO)

    if not logger.handlers:
        handler = logging.StreamHandler(stream or sys.stderr)
        handler.setFormatter(logging.Formatter(fmt or DEFAULT_FORMAT))
        logger.addHandler(handler)

    return logger
