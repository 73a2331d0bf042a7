from hypothesis import HealthCheck, settings

settings.register_profile(
    "acceptance",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("acceptance")
