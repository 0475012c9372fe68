"""
YAML configuration for the sptree CLI.

Every section is optional; missing keys fall back to the defaults below and
command-line flags override whatever the file says.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import yaml

from sptree.errors import ConfigError

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
LOG_FORMATS = ['json', 'text']
DIRECTIONS = ['increase', 'decrease', 'either']


@dataclass
class LoggingSettings:
    level: str = 'WARNING'
    file: Optional[str] = None
    format: str = 'json'


@dataclass
class EngineSettings:
    merge: bool = False
    audit: bool = False


@dataclass
class OracleSettings:
    cap: int = 200_000
    max_vertices: int = 9


@dataclass
class GeneratorSettings:
    base_max: int = 100
    potential_max: int = 50
    strict_positive_base: bool = True


@dataclass
class Scenario:
    """One benchmark run: a generated graph and a stream of updates."""
    n: int
    m: int
    seed: int = 1
    updates: int = 100
    direction: str = 'either'
    allow_inconsistency: bool = False
    base_max: int = 100
    potential_max: int = 50


@dataclass
class BenchSettings:
    scenarios: List[Scenario] = field(default_factory=list)
    jobs: int = 1
    scratch: bool = True


@dataclass
class Settings:
    logging: LoggingSettings = field(default_factory=LoggingSettings)
    engine: EngineSettings = field(default_factory=EngineSettings)
    oracle: OracleSettings = field(default_factory=OracleSettings)
    generator: GeneratorSettings = field(default_factory=GeneratorSettings)
    bench: BenchSettings = field(default_factory=BenchSettings)


def _section(config: Dict[str, Any], name: str) -> Dict[str, Any]:
    value = config.get(name) or {}
    if not isinstance(value, dict):
        raise ConfigError(f"Section '{name}' must be a mapping")
    return value


def _typed(section: Dict[str, Any], key: str, kind: type, default: Any, where: str) -> Any:
    if key not in section or section[key] is None:
        return default
    value = section[key]
    # bool is an int subclass; keep them apart
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigError(f"{where}.{key} must be an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise ConfigError(f"{where}.{key} must be {kind.__name__}, got {value!r}")
    return value


def _choice(value: str, valid: List[str], where: str) -> str:
    if value not in valid:
        raise ConfigError(f"Invalid {where}: {value}. Must be one of {valid}")
    return value


def _positive(value: int, where: str) -> int:
    if value < 1:
        raise ConfigError(f"{where} must be positive, got {value}")
    return value


def _scenario(raw: Any, index: int) -> Scenario:
    where = f"bench.scenarios[{index}]"
    if not isinstance(raw, dict):
        raise ConfigError(f"{where} must be a mapping")
    for required in ('n', 'm'):
        if required not in raw:
            raise ConfigError(f"Missing required field: {where}.{required}")
    defaults = Scenario(n=0, m=0)
    scenario = Scenario(
        n=_positive(_typed(raw, 'n', int, None, where), f"{where}.n"),
        m=_typed(raw, 'm', int, None, where),
        seed=_typed(raw, 'seed', int, defaults.seed, where),
        updates=_typed(raw, 'updates', int, defaults.updates, where),
        direction=_choice(_typed(raw, 'direction', str, defaults.direction, where), DIRECTIONS,
                          f"{where}.direction"),
        allow_inconsistency=_typed(raw, 'allow_inconsistency', bool, defaults.allow_inconsistency, where),
        base_max=_typed(raw, 'base_max', int, defaults.base_max, where),
        potential_max=_typed(raw, 'potential_max', int, defaults.potential_max, where),
    )
    if scenario.updates < 0:
        raise ConfigError(f"{where}.updates must not be negative")
    return scenario


def parse_config(config: Optional[Dict[str, Any]]) -> Settings:
    """
    Validate a loaded YAML document and fill in defaults.

    Raises:
        ConfigError: If configuration is invalid
    """
    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ConfigError("Top level of the config must be a mapping")
    known = {'logging', 'engine', 'oracle', 'generator', 'bench'}
    unknown = sorted(set(config) - known)
    if unknown:
        raise ConfigError(f"Unknown section(s): {', '.join(unknown)}")

    settings = Settings()

    section = _section(config, 'logging')
    level = str(_typed(section, 'level', str, settings.logging.level, 'logging')).upper()
    settings.logging = LoggingSettings(
        level=_choice(level, LOG_LEVELS, 'logging.level'),
        file=_typed(section, 'file', str, None, 'logging'),
        format=_choice(_typed(section, 'format', str, 'json', 'logging'), LOG_FORMATS, 'logging.format'),
    )

    section = _section(config, 'engine')
    settings.engine = EngineSettings(
        merge=_typed(section, 'merge', bool, False, 'engine'),
        audit=_typed(section, 'audit', bool, False, 'engine'),
    )

    section = _section(config, 'oracle')
    settings.oracle = OracleSettings(
        cap=_positive(_typed(section, 'cap', int, settings.oracle.cap, 'oracle'), 'oracle.cap'),
        max_vertices=_positive(
            _typed(section, 'max_vertices', int, settings.oracle.max_vertices, 'oracle'),
            'oracle.max_vertices'),
    )

    section = _section(config, 'generator')
    settings.generator = GeneratorSettings(
        base_max=_typed(section, 'base_max', int, settings.generator.base_max, 'generator'),
        potential_max=_typed(section, 'potential_max', int, settings.generator.potential_max, 'generator'),
        strict_positive_base=_typed(section, 'strict_positive_base', bool, True, 'generator'),
    )

    section = _section(config, 'bench')
    scenarios = section.get('scenarios') or []
    if not isinstance(scenarios, list):
        raise ConfigError("bench.scenarios must be a list")
    settings.bench = BenchSettings(
        scenarios=[_scenario(raw, i) for i, raw in enumerate(scenarios)],
        jobs=_positive(_typed(section, 'jobs', int, 1, 'bench'), 'bench.jobs'),
        scratch=_typed(section, 'scratch', bool, True, 'bench'),
    )
    return settings


def load_config(config_path: str) -> Settings:
    """
    Read and validate a YAML config file.

    Raises:
        ConfigError: missing file, bad YAML, or invalid values
    """
    try:
        with open(config_path, 'r') as f:
            config = yaml.safe_load(f)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {config_path}")
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML: {e}")
    return parse_config(config)
