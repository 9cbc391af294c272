"""
JSON interchange: document loading, schemas and atomic report writing.
"""

from spinlift.storage.json import AtomicJSONWriter, dump_report, load_document, write_report

__all__ = ["AtomicJSONWriter", "dump_report", "load_document", "write_report"]
