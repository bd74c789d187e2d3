"""Infrastructure layer - file storage."""

from cs_audit.analysis.infrastructure.storage import RunStorage, sha256_file
from cs_audit.analysis.infrastructure.table_adapter import TableAdapter

__all__ = ['RunStorage', 'TableAdapter', 'sha256_file']
