# biring/run_biring.py
"""
ГЛАВНЫЙ СКРИПТ КОМАНДНОЙ СТРОКИ biring

Точная арифметика би-кольца линейных рекуррентных последовательностей:
1. Кольцевые операции (сумма, произведение Адамара, сдвиг, psi^n)
2. Копроизведение и его целочисленность
3. Реализация систем управления и вложение в грассманиан
4. Подсчёт точек над F_p, дзета Курокавы и мотив Манина

Использование:
    python run_biring.py infer --terms 0,1,1,2,3,5,8,13
    python run_biring.py hadamard --spec a.json --spec b.json
    python run_biring.py count --n 1 --p 2 --kind union --mode brute

Коды выхода: 0: успех, 2: некорректный ввод, 3: ошибка вычислений.
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

# Добавляем текущую директорию в путь
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli.commands import COMMANDS
from cli.error_handlers import EXIT_OK, handle_cli_error
from cli.text_templates import format_text
from core.config_loader import ConfigLoader
from core.pointcount import KINDS
from utils.logger import setup_logger

logger = logging.getLogger(__name__)


# ============================================================================
# РАЗБОР АРГУМЕНТОВ
# ============================================================================
def _common_parser() -> argparse.ArgumentParser:
    """Флаги, общие для всех подкоманд"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['json', 'text'], default=None,
                        help='Формат вывода (по умолчанию из output.format)')
    common.add_argument('--spec', action='append', metavar='PATH',
                        help='JSON-файл с входным документом (можно несколько)')
    common.add_argument('--json', action='append', metavar='DOC',
                        help='Входной документ строкой JSON (можно несколько)')
    common.add_argument('--config', metavar='DIR', help='Директория с settings.yaml')
    common.add_argument('--verbose', action='store_true', help='Подробный лог в stderr')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='biring',
        description='Би-кольцо линейных рекуррентных последовательностей и системы управления',
    )
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('infer', parents=[common], help='Минимальная рекуррента по префиксу')
    p.add_argument('--terms', help='Члены через запятую: 0,1,1,2,3')

    for name, help_text in (('term', 'n-й член'), ('prefix', 'Первые n членов')):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('--n', type=int)

    for name, help_text in (('add', 'Почленная сумма'), ('hadamard', 'Произведение Адамара')):
        sub.add_parser(name, parents=[common], help=help_text)

    p = sub.add_parser('shift', parents=[common], help='Сдвиг D^i')
    p.add_argument('--i', type=int)

    p = sub.add_parser('psi', parents=[common], help='psi^n: подпоследовательность f_{nm}')
    p.add_argument('--n', type=int)

    sub.add_parser('coproduct', parents=[common], help='Копроизведение Δ(f)')
    sub.add_parser('integrality', parents=[common], help='Проверка |det H| = 1')
    sub.add_parser('realize', parents=[common], help='Каноническая реализация (A, B, C)')

    p = sub.add_parser('markov', parents=[common], help='Марковские параметры C A^i B')
    p.add_argument('--n', type=int, help='Число параметров (по умолчанию 2n+1)')

    sub.add_parser('grassmann', parents=[common], help='Точка грассманиана (K, M)')
    sub.add_parser('transpose', parents=[common], help='Транспонированная система')

    p = sub.add_parser('count', parents=[common], help='Подсчёт точек над F_p')
    p.add_argument('--n', type=int)
    p.add_argument('--p', type=int)
    p.add_argument('--kind', choices=KINDS, default='union')
    p.add_argument('--mode', choices=['brute', 'closed'], default='brute')
    p.add_argument('--allow-large', action='store_true', help='Снять лимит перебора')

    for name, help_text in (('zeta', 'Дзета Курокавы'), ('motive', 'Мотив Манина')):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('--kind', choices=KINDS, default='union')
        p.add_argument('--n', type=int)
        source = p.add_mutually_exclusive_group()
        source.add_argument('--poly', help='Коэффициенты a_0,a_1,... считающего многочлена')
        source.add_argument('--closure', action='store_true', help='Всё некоммутативное пространство модулей')
        p.add_argument('--truncate', type=int, help='Усечение бесконечного произведения')

    return parser


# ============================================================================
# ВЫВОД
# ============================================================================
def emit(payload: dict, output_format: str, stream=None):
    stream = stream or sys.stdout
    if output_format == 'text':
        print(format_text(payload), file=stream)
    else:
        print(json.dumps(payload, ensure_ascii=False, indent=2), file=stream)


# ============================================================================
# КОМАНДНАЯ СТРОКА
# ============================================================================
def main(argv: Optional[List[str]] = None) -> int:
    """Точка входа; возвращает код выхода 0, 2 или 3"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = ConfigLoader(args.config)
        level = 'DEBUG' if args.verbose else config.get_setting('logging.level', 'WARNING')
        setup_logger(None, level=level, fmt=config.get_setting('logging.format'))
        output_format = args.format or config.get_setting('output.format', 'json')

        logger.debug(f"Команда {args.command}")
        payload = COMMANDS[args.command](args, config)
        emit(payload, output_format)
        return EXIT_OK

    except KeyboardInterrupt:
        logger.info("Завершение по запросу пользователя")
        return 3
    except Exception as e:
        return handle_cli_error(e)


# ============================================================================
# ЗАПУСК
# ============================================================================
if __name__ == "__main__":
    sys.exit(main())
