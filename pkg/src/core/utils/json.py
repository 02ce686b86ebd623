import dataclasses
import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel


def json_serialize(obj: Any) -> Any:
    """
    Сериализация объекта в валидный json
    :param obj: объект
    :return: json
    """
    if isinstance(obj, BaseModel):
        return json_serialize(obj.model_dump(mode="python", by_alias=True))
    elif isinstance(obj, Enum):
        return obj.value
    elif isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, (np.floating, Fraction)):
        return float(obj)
    elif isinstance(obj, np.ndarray):
        return [json_serialize(i) for i in obj.tolist()]
    elif isinstance(obj, (frozenset, set)):
        return sorted(json_serialize(i) for i in obj)
    elif isinstance(obj, (list, tuple)):
        return [json_serialize(i) for i in obj]
    elif isinstance(obj, dict):
        return {str(k): json_serialize(v) for k, v in obj.items()}
    elif isinstance(obj, Path):
        return str(obj)
    elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: json_serialize(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    else:
        return obj


def dump_report(obj: Any) -> str:
    """
    Детерминированный JSON отчета: сортированные ключи, отступ 2.
    Вещественные числа пишутся кратчайшим точным представлением (до 17 знаков).
    :param obj: отчет
    :return: строка JSON
    """
    return json.dumps(json_serialize(obj), sort_keys=True, indent=2, allow_nan=False)
