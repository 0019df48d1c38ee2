"""
Обработчики ошибок командной строки biring.
Сопоставляют исключения кодам выхода: 2: плохой ввод, 3: ошибка вычислений.
"""

import json
import logging
import sys

from pydantic import ValidationError

from core.errors import BiringError, InvalidInputError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_DOMAIN_ERROR = 3


def exit_code_for(error: BaseException) -> int:
    """Код выхода для исключения; множество кодов ограничено {2, 3}"""
    if isinstance(error, (InvalidInputError, json.JSONDecodeError, ValidationError)):
        return EXIT_BAD_INPUT
    return EXIT_DOMAIN_ERROR


def send_error_message(error: BaseException, stream=None):
    """Одна строка 'error: ...' в stderr"""
    stream = stream or sys.stderr
    message = str(error).replace("\n", "; ") or type(error).__name__
    try:
        print(f"error: {message}", file=stream)
    except Exception:
        logger.error(f"Не удалось вывести сообщение об ошибке: {message}")


def handle_cli_error(error: BaseException, stream=None) -> int:
    """Глобальный обработчик ошибок CLI"""
    code = exit_code_for(error)
    if isinstance(error, BiringError) or code == EXIT_BAD_INPUT:
        logger.error(f"{type(error).__name__}: {error}")
    else:
        logger.error(f"Непредвиденная ошибка: {error}", exc_info=True)
    send_error_message(error, stream)
    return code
