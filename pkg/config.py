from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configurações da biblioteca e da CLI"""

    # Logging estruturado (stderr; stdout fica reservado para os relatórios)
    log_level: str = "WARNING"
    log_format_json: bool = False
    log_include_timestamp: bool = True

    # Quadratura adaptativa de Gauss-Legendre
    quadrature_tolerance: float = 1e-9
    quadrature_order: int = 10
    quadrature_max_depth: int = 50

    # Integrais sobre a esfera S^{n-2}
    theta_nodes: int = 64  # trapézio periódico para n = 3
    sphere_nodes: int = 32  # Gauss-Jacobi para n >= 4

    # Cálculo BV
    jump_tolerance: float = 1e-12
    cantor_depth: int = 14
    cantor_digits: int = 64

    # Esquema de refinamento (escadas de Cantor)
    staircase_start_depth: int = 6
    staircase_max_depth: int = 20
    staircase_tolerance: float = 1e-6

    # Oráculo numérico
    oracle_resolution: int = 400
    oracle_disk_vertices: int = 10000
    density_samples: int = 20000
    default_seed: int = 20240607
    verify_depth: int = 6  # profundidade diádica dos perfis de Cantor no verify

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )


settings = Settings()
