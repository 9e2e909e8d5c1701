"""Report serialization for chromatic-forge."""
