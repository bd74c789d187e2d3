"""Configuration management for the audit tool."""
import os
import yaml
from pathlib import Path
from typing import Any, Dict, Optional

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent.parent / "config" / "config.yaml"


class Config:
    """Singleton configuration class."""
    _instance = None
    _config: Dict[str, Any] = {}
    _path: Optional[Path] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._load_config()
        return cls._instance

    def _load_config(self, path: Optional[Path] = None) -> None:
        """Load configuration from YAML file (CS_AUDIT_CONFIG overrides the default path)."""
        if path is None:
            path = Path(os.environ.get("CS_AUDIT_CONFIG", DEFAULT_CONFIG_PATH))
        with open(path, 'r') as f:
            self._config = yaml.safe_load(f) or {}
        self._path = path

    def reload(self, path: Optional[str] = None) -> None:
        """Re-read the configuration, optionally from another file."""
        self._load_config(Path(path) if path else None)

    @property
    def path(self) -> Optional[Path]:
        """Path of the loaded YAML file."""
        return self._path

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value using dot notation (e.g., 'recovery.tau_feas')."""
        keys = key.split('.')
        value = self._config
        for k in keys:
            if isinstance(value, dict):
                value = value.get(k, default)
            else:
                return default
        return value


# Create global config instance
config = Config()
