"""
Application configuration settings
"""

from pathlib import Path

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables
load_dotenv()

PACKAGE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="CRITGROUP_",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "critgroup"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # Chip-firing safeguard (firings per stabilization)
    STEP_LIMIT: int = 10_000_000

    # Bundled catalog resources
    CATALOG_DIR: Path = PACKAGE_DIR / "data"

    # Output
    DEFAULT_FORMAT: str = "text"


# Create settings instance
settings = Settings()
