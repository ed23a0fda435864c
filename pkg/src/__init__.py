from pathlib import Path
from dotenv import load_dotenv

ROOT_DIR = Path(__file__).resolve().parent.parent
load_dotenv(f"{ROOT_DIR}/.env")

from src.config import get_settings  # noqa: E402
from src.logger import configure_logging  # noqa: E402

configure_logging(get_settings().log_level)
