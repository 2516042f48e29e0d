"""
Auxiliary functions
"""
import logging
import os
import uuid
from typing import Callable, Iterable, Optional, TypeVar

import coloredlogs
import tqdm
from dynaconf import Dynaconf
from tqdm.contrib.concurrent import process_map

NAMESPACE_UUID: uuid.UUID = uuid.UUID('{5f0c7a52-3b1e-5d7e-9a61-2c4e8d0b7f13}')
PROJECT_ROOT: str = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SETTINGS = Dynaconf(
    envvar_prefix="SUPERJORDAN",
    settings_files=[os.path.join(PROJECT_ROOT, "settings.toml")],
)

T = TypeVar("T")
R = TypeVar("R")


def generate_log(name: str, log_level: Optional[str] = None) -> logging.Logger:
    """
    Generate a logger with the specified name and log level.

    Args:
        name (str): The name of the logger.
        log_level (Optional[str], optional): The log level. Defaults to the ``LOG_LEVEL`` setting.

    Returns:
        logging.Logger: The generated logger.
    """
    if log_level is None:
        log_level = SETTINGS.get("LOG_LEVEL", "info")
    log = logging.getLogger(name)
    coloredlogs.install(level=log_level)
    return log


def build_non_existing_dirs(file_path: str):
    """
    Build non-existing directories for a given file path.

    Args:
        file_path (str): The file path.

    Returns:
        bool: True if directories were created successfully.
    """
    if not file_path:
        return True
    os.makedirs(os.path.normpath(file_path), exist_ok=True)
    return True


def initialize_output_file(file_path: str):
    """
    Initialize an output file by creating necessary directories and removing the file if it already exists.

    Args:
        file_path (str): The path of the file to initialize.
    """
    build_non_existing_dirs(file_path=os.path.dirname(file_path))
    if os.path.exists(file_path):
        os.remove(file_path)


def generate_uuid(base_value: str, base_uuid: Optional[uuid.UUID] = None, added_string: str = "") -> str:
    """
    Generate a deterministic UUID based on a base value, base UUID, and an optional added string.

    Args:
        base_value (str): The base value for generating the UUID.
        base_uuid (Optional[uuid.UUID], optional): The base UUID. Defaults to NAMESPACE_UUID.
        added_string (str, optional): The optional added string. Defaults to "".

    Returns:
        str: The generated UUID.
    """
    if base_uuid is None:
        base_uuid = NAMESPACE_UUID
    return str(uuid.uuid5(base_uuid, added_string + str(base_value)))


def get_threads() -> int:
    """Number of worker processes, from ``SUPERJORDAN_THREADS`` (at least 1)."""
    return max(1, int(SETTINGS.get("THREADS", 1)))


def parallel_map(
    function: Callable[[T], R], items: Iterable[T], desc: str, threads: Optional[int] = None,
    chunksize: int = 64
) -> list[R]:
    """
    Map a picklable function over items, in worker processes when more than one thread is allowed.

    The output order always follows the input order, whatever the scheduling.

    Args:
        function (Callable[[T], R]): Module-level function (or ``functools.partial`` of one).
        items (Iterable[T]): Inputs.
        desc (str): Progress bar label.
        threads (Optional[int], optional): Worker count. Defaults to ``get_threads()``.
        chunksize (int, optional): Items sent to a worker at once. Defaults to 64.

    Returns:
        list[R]: Results in input order.
    """
    items = list(items)
    if threads is None:
        threads = get_threads()
    if threads > 1 and len(items) > 1:
        return process_map(
            function, items, max_workers=threads, chunksize=chunksize, desc=desc, ncols=120,
            disable=None)
    return [function(item) for item in tqdm.tqdm(items, desc=desc, ncols=120, disable=None)]
