# biring/cli/commands.py
"""
Подкоманды CLI: разбор входных документов, вызов ядра, сборка ответа.

Каждая команда получает argparse.Namespace и ConfigLoader и возвращает
словарь, готовый к выводу в JSON (все числа: строки).
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from core import coring, seqcore, systems, zeta
from core.errors import InvalidInputError, TermBudgetError
from core.exactla import PrimeField, format_rational
from core.pointcount import (
    CountReport,
    CountingPolynomial,
    PointCounter,
    closed_form_count,
    closure_counting_polynomial,
    counting_polynomial,
    general_linear_order,
)
from utils.schemas import (
    CountReportSchema,
    GrassmannSchema,
    MarkovSchema,
    PrefixSchema,
    SequenceSchema,
    SystemSchema,
    TermSchema,
    TensorSchema,
    ZetaSchema,
    dump,
)

logger = logging.getLogger(__name__)

HARD_TERM_CAP = 10 ** 6


# ============================================================================
# ВВОД
# ============================================================================
def read_documents(args, expected: int) -> List[Any]:
    """
    Входные JSON-документы: --spec (файлы), затем --json (строки);
    если ни одного нет: stdin (один документ или список из expected документов).
    """
    documents: List[Any] = []
    for path in args.spec or []:
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            raise InvalidInputError(f"Не удалось прочитать {path}: {e}")
        documents.append(json.loads(text))
    for text in args.json or []:
        documents.append(json.loads(text))

    if not documents:
        text = sys.stdin.read()
        if not text.strip():
            raise InvalidInputError("Нет входных данных: используйте --spec, --json или stdin")
        data = json.loads(text)
        if expected > 1 and isinstance(data, list):
            documents.extend(data)
        else:
            documents.append(data)

    if len(documents) != expected:
        raise InvalidInputError(f"Ожидалось документов: {expected}, получено: {len(documents)}")
    for document in documents:
        if not isinstance(document, dict):
            raise InvalidInputError("Каждый входной документ должен быть JSON-объектом")
    return documents


def read_sequences(args, expected: int = 1) -> List[seqcore.LinRecSequence]:
    return [SequenceSchema.parse_obj(d).to_domain() for d in read_documents(args, expected)]


def read_system(args) -> systems.LinearSystem:
    return SystemSchema.parse_obj(read_documents(args, 1)[0]).to_domain()


def parse_number_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(',') if item.strip()]


def parse_integer_list(text: str) -> List[int]:
    try:
        return [int(item) for item in parse_number_list(text)]
    except ValueError:
        raise InvalidInputError(f"Ожидался список целых через запятую, получено {text!r}")


def term_budget(config) -> int:
    limit = config.get_setting('limits.max_terms', HARD_TERM_CAP) if config else HARD_TERM_CAP
    return min(int(limit), HARD_TERM_CAP)


def check_budget(value: int, config, what: str) -> int:
    if value < 0:
        raise InvalidInputError(f"{what} должно быть неотрицательным, получено {value}")
    budget = term_budget(config)
    if value > budget:
        raise TermBudgetError(f"{what} = {value} превышает лимит {budget}")
    return value


def require(value: Optional[Any], flag: str) -> Any:
    if value is None:
        raise InvalidInputError(f"Требуется флаг {flag}")
    return value


def sequence_payload(f: seqcore.LinRecSequence) -> Dict[str, Any]:
    return dump(SequenceSchema.from_domain(f))


# ============================================================================
# ПОСЛЕДОВАТЕЛЬНОСТИ
# ============================================================================
def cmd_infer(args, config) -> Dict[str, Any]:
    if args.terms is not None:
        prefix = PrefixSchema(terms=parse_number_list(args.terms))
    else:
        prefix = PrefixSchema.parse_obj(read_documents(args, 1)[0])
    check_budget(len(prefix.terms), config, "Число членов")
    return sequence_payload(seqcore.infer_recurrence(prefix.to_domain()))


def cmd_term(args, config) -> Dict[str, Any]:
    n = check_budget(require(args.n, '--n'), config, "Индекс")
    f, = read_sequences(args)
    value = seqcore.term(f, n)
    return dump(TermSchema(n=str(n), value=format_rational(value)))


def cmd_prefix(args, config) -> Dict[str, Any]:
    count = check_budget(require(args.n, '--n'), config, "Длина префикса")
    f, = read_sequences(args)
    return dump(PrefixSchema.from_domain(seqcore.prefix(f, count)))


def cmd_add(args, config) -> Dict[str, Any]:
    f, g = read_sequences(args, 2)
    return sequence_payload(seqcore.add(f, g))


def cmd_hadamard(args, config) -> Dict[str, Any]:
    f, g = read_sequences(args, 2)
    return sequence_payload(seqcore.hadamard(f, g))


def cmd_shift(args, config) -> Dict[str, Any]:
    i = check_budget(require(args.i, '--i'), config, "Сдвиг")
    f, = read_sequences(args)
    return sequence_payload(seqcore.minimize(seqcore.shift(f, i)))


def cmd_psi(args, config) -> Dict[str, Any]:
    n = require(args.n, '--n')
    f, = read_sequences(args)
    check_budget(n * (2 * f.order + 1), config, "Число членов для psi")
    return sequence_payload(seqcore.psi(f, n))


# ============================================================================
# КОПРОИЗВЕДЕНИЕ
# ============================================================================
def cmd_coproduct(args, config) -> Dict[str, Any]:
    f, = read_sequences(args)
    tensor = coring.coproduct(f)
    det = coring.hankel_det(f)
    return dump(TensorSchema.from_domain(tensor, integral=abs(det) == 1, hankel_det=det))


def cmd_integrality(args, config) -> Dict[str, Any]:
    f, = read_sequences(args)
    det = coring.hankel_det(f)
    return {
        'integral': abs(det) == 1,
        'hankel_det': format_rational(det),
        'hankel_rank': str(coring.hankel_rank(f)),
    }


# ============================================================================
# СИСТЕМЫ
# ============================================================================
def cmd_realize(args, config) -> Dict[str, Any]:
    f, = read_sequences(args)
    return dump(SystemSchema.from_domain(systems.realize(f)))


def cmd_markov(args, config) -> Dict[str, Any]:
    system = read_system(args)
    count = None if args.n is None else check_budget(args.n, config, "Число марковских параметров")
    prefix = systems.markov(system, count)
    sequence = systems.markov_sequence(system)
    return dump(MarkovSchema(
        terms=PrefixSchema.from_domain(prefix).terms,
        sequence=SequenceSchema.from_domain(sequence),
    ))


def cmd_grassmann(args, config) -> Dict[str, Any]:
    point = systems.grassmann_embed(read_system(args))
    return dump(GrassmannSchema.from_domain(point))


def cmd_transpose(args, config) -> Dict[str, Any]:
    return dump(SystemSchema.from_domain(systems.transpose_system(read_system(args))))


# ============================================================================
# ПОДСЧЁТ ТОЧЕК И ДЗЕТА
# ============================================================================
def cmd_count(args, config) -> Dict[str, Any]:
    n, p = require(args.n, '--n'), require(args.p, '--p')
    kind = args.kind
    if args.mode == 'closed':
        PrimeField(p)
        closed = closed_form_count(n, p, kind)
        group_order = general_linear_order(n, p)
        report = CountReport(
            n=n, p=p, kind=kind,
            raw_point_count=closed * group_order, group_order=group_order,
            orbit_count=closed, closed_form=closed, free_action=True,
        )
    else:
        report = PointCounter(config).brute_force_count(n, p, kind, allow_large=args.allow_large)
    return dump(CountReportSchema.from_domain(report, mode=args.mode))


def _polynomial_from_args(args) -> CountingPolynomial:
    if args.poly is not None:
        return CountingPolynomial(tuple(parse_integer_list(args.poly)))
    if args.closure:
        truncation = require(args.truncate, '--truncate')
        if truncation < 0:
            raise InvalidInputError(f"--truncate должно быть >= 0, получено {truncation}")
        coefficients = closure_counting_polynomial((truncation + 1) // 2).coefficients
        return CountingPolynomial(coefficients[:truncation + 1])
    return counting_polynomial(args.kind, require(args.n, '--n'))


def cmd_zeta(args, config) -> Dict[str, Any]:
    polynomial = _polynomial_from_args(args)
    z = zeta.kurokawa_zeta(polynomial)
    if args.closure:
        z = zeta.ZetaExpr(z.factors, z.normalization, args.truncate)
    return dump(ZetaSchema.from_domain(z, polynomial))


def cmd_motive(args, config) -> Dict[str, Any]:
    polynomial = _polynomial_from_args(args)
    if args.closure:
        z = zeta.closure_motive(args.truncate)
    else:
        z = zeta.manin_motive(polynomial)
    return dump(ZetaSchema.from_domain(z, polynomial))


# ============================================================================
# ТАБЛИЦА КОМАНД
# ============================================================================
COMMANDS: Dict[str, Callable] = {
    'infer': cmd_infer,
    'term': cmd_term,
    'prefix': cmd_prefix,
    'add': cmd_add,
    'hadamard': cmd_hadamard,
    'shift': cmd_shift,
    'psi': cmd_psi,
    'coproduct': cmd_coproduct,
    'integrality': cmd_integrality,
    'realize': cmd_realize,
    'markov': cmd_markov,
    'grassmann': cmd_grassmann,
    'transpose': cmd_transpose,
    'count': cmd_count,
    'zeta': cmd_zeta,
    'motive': cmd_motive,
}
