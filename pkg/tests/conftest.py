from hypothesis import settings

# fixed example sequence so property tests are reproducible run to run
settings.register_profile("repro", derandomize=True, database=None)
settings.load_profile("repro")
