# Gapped consecutive-occurrence indexing package
