from hypothesis import settings

# caches warm up on first use, so wall-clock deadlines are meaningless here
settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")
