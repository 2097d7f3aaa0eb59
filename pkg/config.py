"""
Módulo de configuração do toolkit de lógicas de programas.
Centraliza limites de domínio, orçamentos e parâmetros de fuzzing usando
pydantic-settings (variáveis de ambiente ou arquivo `.env`).
"""
from pydantic import computed_field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configurações carregadas de variáveis de ambiente.
    """

    # Domínio finito ℤ_B da semântica simples
    DEFAULT_DOMAIN: int = 8
    PLAIN_STATE_BUDGET: int = 2**20
    # Relações explícitas crescem com |Σ| x ramificação
    RELATION_PAIR_BUDGET: int = 40_000_000
    # Abaixo deste |Σ| a validade SIL também é conferida na forma ∀∃
    CROSS_CHECK_STATE_LIMIT: int = 4096

    # Modelo limitado de Separation SIL
    SEP_LOCATIONS: int = 3
    SEP_SPARE_LOCATIONS: int = 1
    SEP_INT_MIN: int = 0
    SEP_INT_MAX: int = 1
    SEP_STATE_BUDGET: int = 600_000

    # Campanhas de fuzzing
    FUZZ_SEED: int = 7
    FUZZ_INSTANCES: int = 500
    FUZZ_MAX_DEPTH: int = 4
    FUZZ_MAX_VARS: int = 3
    FUZZ_DOMAIN: int = 8
    FUZZ_WORKERS: int = 1
    SEARCH_BUDGET: int = 2000

    # Renderização de conjuntos de estados
    RENDER_CUBE_LIMIT: int = 24
    RENDER_SAMPLE_COUNT: int = 5

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: str = "logic_toolkit.log"
    LOG_TO_FILE: bool = False

    @field_validator("DEFAULT_DOMAIN", "FUZZ_DOMAIN")
    @classmethod
    def domain_must_be_nontrivial(cls, value: int) -> int:
        if value < 2:
            raise ValueError("o módulo do domínio deve ser pelo menos 2")
        return value

    @field_validator(
        "PLAIN_STATE_BUDGET",
        "RELATION_PAIR_BUDGET",
        "SEP_STATE_BUDGET",
        "FUZZ_INSTANCES",
        "FUZZ_MAX_DEPTH",
        "FUZZ_MAX_VARS",
        "FUZZ_WORKERS",
        "SEARCH_BUDGET",
        "RENDER_CUBE_LIMIT",
        "SEP_LOCATIONS",
    )
    @classmethod
    def must_be_positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("o valor deve ser positivo")
        return value

    @model_validator(mode="after")
    def int_range_not_empty(self) -> "Settings":
        if self.SEP_INT_MAX < self.SEP_INT_MIN:
            raise ValueError("SEP_INT_MAX deve ser >= SEP_INT_MIN")
        if self.SEP_SPARE_LOCATIONS < 0:
            raise ValueError("SEP_SPARE_LOCATIONS não pode ser negativo")
        return self

    @computed_field
    @property
    def sep_value_count(self) -> int:
        """|Val| do modelo de heap: inteiros mais localizações enumeradas."""
        return (self.SEP_INT_MAX - self.SEP_INT_MIN + 1) + self.SEP_LOCATIONS

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"  # Ignora variáveis de ambiente extras não definidas
    )


# Instância global de configurações
settings = Settings()
