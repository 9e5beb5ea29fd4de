"""Shared factories for the command modules."""

from pathlib import Path
from typing import Optional

from .config import settings
from .services.gf2_field import FieldCtx, build_field_ctx
from .services.storage import StorageService


def get_storage_service(base_dir: Optional[Path] = None) -> StorageService:
    """Get storage service instance rooted at base_dir or the configured outputs dir."""
    return StorageService(base_dir or settings.outputs_dir)


def get_field_ctx(p: int, n: int, cap_degree: Optional[int] = None) -> FieldCtx:
    """Field context for (p, n); contexts are cached per process."""
    return build_field_ctx(p, n, cap_degree)
