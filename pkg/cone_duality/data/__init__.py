# JSON ingestion for cone_duality
