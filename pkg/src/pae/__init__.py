"""Product attribute extraction pipeline for PDF trend reports.

Subpackages follow the pipeline stages: ``ingest`` (PDF content),
``extract`` (LLM attribute/hashtag extraction), ``normalize`` (value
canonicalization and per-page merging), ``match`` (catalog matching via
embedding similarity), ``evaluation`` (scoring against ground truth) and
``cli`` (orchestration, synthetic documents, benchmarks).
"""

__version__ = "0.1.0"
