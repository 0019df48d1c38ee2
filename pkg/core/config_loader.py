"""
Модуль загрузки конфигурации biring.
Загружает settings.yaml с использованием ruamel.yaml; переменные окружения
читаются из .env через python-dotenv.
"""

# ============================================================================
# ИМПОРТЫ
# ============================================================================
import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from ruamel.yaml import YAML

# ============================================================================
# НАСТРОЙКА ЛОГГИРОВАНИЯ
# ============================================================================
logger = logging.getLogger(__name__)
yaml = YAML()

PROJECT_ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR_ENV = "BIRING_CONFIG_DIR"
LOG_LEVEL_ENV = "BIRING_LOG_LEVEL"


def _deep_merge(defaults: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
    """Недостающие ключи берутся из defaults, заданные в файле сохраняются"""
    result = copy.deepcopy(defaults)
    for key, value in (loaded or {}).items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value
    return result


# ============================================================================
# КЛАСС ConfigLoader
# ============================================================================
class ConfigLoader:
    """
    Загрузчик конфигурации из YAML.
    Обеспечивает доступ к лимитам, настройкам перебора и логирования.
    """

    # ------------------------------------------------------------------------
    # ИНИЦИАЛИЗАЦИЯ
    # ------------------------------------------------------------------------
    def __init__(self, config_path: Optional[str] = None):
        """
        Args:
            config_path: Директория с settings.yaml. Если None: BIRING_CONFIG_DIR
                         или config/ в корне проекта.
        """
        load_dotenv(PROJECT_ROOT / ".env")
        self.config_dir = self._get_config_dir(config_path)
        self.settings: Dict[str, Any] = {}

        self._load_all_configs()
        logger.debug("ConfigLoader инициализирован")

    # ------------------------------------------------------------------------
    # ПОЛУЧЕНИЕ ПУТИ К КОНФИГАМ
    # ------------------------------------------------------------------------
    def _get_config_dir(self, config_path: Optional[str]) -> Path:
        if config_path:
            path = Path(config_path)
        elif os.getenv(CONFIG_DIR_ENV):
            path = Path(os.environ[CONFIG_DIR_ENV])
        else:
            path = PROJECT_ROOT / "config"
        logger.debug(f"Директория конфигов: {path}")
        return path

    # ------------------------------------------------------------------------
    # ЗАГРУЗКА
    # ------------------------------------------------------------------------
    def _load_all_configs(self):
        self.settings = self._load_config_file("settings.yaml", self._get_default_settings())
        level = os.getenv(LOG_LEVEL_ENV)
        if level:
            self.settings.setdefault("logging", {})["level"] = level.upper()

    def _load_config_file(self, filename: str, default_config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Загрузка конфигурационного файла.
        Если файл не существует, создаётся с дефолтными значениями.
        """
        filepath = self.config_dir / filename

        if not filepath.exists():
            logger.warning(f"Файл {filename} не найден, создаём с дефолтными значениями")
            self._save_config_file(filepath, default_config)
            return copy.deepcopy(default_config)

        try:
            with open(filepath, 'r', encoding='utf-8') as f:
                config = yaml.load(f)

            if not config:
                logger.warning(f"Файл {filename} пуст, используем дефолтные значения")
                return copy.deepcopy(default_config)

            logger.debug(f"Файл {filename} успешно загружен")
            return _deep_merge(default_config, dict(config))

        except Exception as e:
            logger.error(f"Ошибка загрузки файла {filename}: {e}")
            return copy.deepcopy(default_config)

    def _save_config_file(self, filepath: Path, config: Dict[str, Any]):
        """Ошибка записи не фатальна: работаем на дефолтах"""
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            with open(filepath, 'w', encoding='utf-8') as f:
                yaml.dump(config, f)
            logger.info(f"Файл {filepath.name} сохранён с дефолтными значениями")
        except Exception as e:
            logger.error(f"Ошибка сохранения файла {filepath.name}: {e}")

    # ------------------------------------------------------------------------
    # ДЕФОЛТНЫЕ КОНФИГУРАЦИИ
    # ------------------------------------------------------------------------
    def _get_default_settings(self) -> Dict[str, Any]:
        return {
            "logging": {
                "level": "WARNING",
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            },
            "limits": {
                "max_terms": 1000000,
            },
            "enumeration": {
                "max_n": 2,
                "max_p": 3,
                "workers": 1,
                "verify_freeness": True,
                "orbit_debug_max_n": 1,
            },
            "output": {
                "format": "json",
            },
        }

    # ------------------------------------------------------------------------
    # ПУБЛИЧНЫЕ МЕТОДЫ
    # ------------------------------------------------------------------------
    def get_setting(self, key: str, default: Any = None) -> Any:
        """
        Получение значения настройки.

        Args:
            key: Ключ настройки (например, 'enumeration.max_n')
            default: Значение по умолчанию, если ключ не найден
        """
        try:
            value = self.settings
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            logger.debug(f"Настройка '{key}' не найдена, возвращаем дефолт: {default}")
            return default

    def load_settings(self) -> Dict[str, Any]:
        return self.settings


# ============================================================================
# ФУНКЦИИ ДЛЯ УДОБСТВА
# ============================================================================
def get_config(config_path: Optional[str] = None) -> ConfigLoader:
    """Экземпляр ConfigLoader"""
    return ConfigLoader(config_path)
