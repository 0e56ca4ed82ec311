"""Python interface to the Yang-Mills wave-equation laboratory."""

from _ymlab import (  # noqa: F401
    BackgroundSample,
    BoundaryMode,
    ConfigError,
    Energy,
    GeometricEnergies,
    Grid,
    NumericalError,
    RunResult,
    State,
    analyze_run,
    background,
    build_grid,
    derivative1,
    derivative2,
    evolve,
    gaussian_state,
    geometric_energies,
    kruskal,
    lapse_of_r_star,
    local_energy,
    morawetz_bulk,
    r_of_r_star,
    r_star_of_r,
    run_from_config,
    scalar_energy,
    stationary,
    step,
    vacuum_state,
    verify_parameters,
)
