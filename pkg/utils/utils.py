import json
import logging
from typing import Any

logger = logging.getLogger("logic_toolkit.snapshot")


def log_snapshot(name: str, data: Any) -> None:
    """Registra uma amostra estruturada no logging de debug."""
    if not logger.isEnabledFor(logging.DEBUG):
        return
    if isinstance(data, list) and data and hasattr(data[0], "model_dump"):
        payload = [item.model_dump(mode="json") for item in data]
    elif hasattr(data, "model_dump"):
        payload = data.model_dump(mode="json")  # type: ignore[assignment]
    else:
        payload = data

    logger.debug(
        "snapshot=%s payload=%s",
        name,
        json.dumps(payload, indent=2, ensure_ascii=False, default=str),
    )


def parse_level(name: str) -> int:
    """Nível de logging a partir do nome (`debug`, `INFO`, ...)."""
    level = logging.getLevelName(name.upper())
    if not isinstance(level, int):
        raise ValueError(f"nível de log desconhecido: {name!r}")
    return level
