from .data import ingest, stats, synthesize
