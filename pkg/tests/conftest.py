from hypothesis import settings

settings.register_profile("ellq", max_examples=40, deadline=None)
settings.load_profile("ellq")
