"""
Текстовые шаблоны вывода CLI.
Тот же документ, что и в JSON, построчно: "путь: значение".
"""

from typing import Any, Dict, Iterator, List, Tuple


def _flatten(value: Any, path: str) -> Iterator[Tuple[str, str]]:
    if isinstance(value, dict):
        if not value:
            yield path, "{}"
        for key, item in value.items():
            yield from _flatten(item, f"{path}.{key}" if path else str(key))
    elif isinstance(value, list):
        if not value:
            yield path, "[]"
        for index, item in enumerate(value):
            yield from _flatten(item, f"{path}.{index}" if path else str(index))
    elif isinstance(value, bool):
        yield path, "true" if value else "false"
    elif value is None:
        yield path, "null"
    else:
        yield path, str(value)


def flatten_payload(payload: Dict[str, Any]) -> List[Tuple[str, str]]:
    """Пары (путь, значение) в порядке полей документа"""
    return list(_flatten(payload, ""))


def format_text(payload: Dict[str, Any]) -> str:
    """Текстовый вид результата; для дзета-выражений последняя строка: формула"""
    lines = [f"{path}: {value}" for path, value in flatten_payload(payload)]
    if isinstance(payload.get("text"), str):
        lines.append("")
        lines.append(payload["text"])
    return "\n".join(lines)
