from ._rcm_lab import (
    Environment,
    HeatKernelField,
    LatticeGraph,
    MetricField,
    SpeedMeasure,
    carne_F,
    carne_F_numeric,
    certify_feasible,
    duality_gap,
    export_environment_csv,
    gen_constant,
    gen_iid,
    gen_layered,
    greedy_path_layered,
    heat_kernel_field,
    import_environment_csv,
    intrinsic_distance_field,
    chemical_edge_weight,
    mu,
    nu,
    run_acceptance,
    solve_cauchy,
    speed_measure,
)

__all__ = [
    "Environment",
    "HeatKernelField",
    "LatticeGraph",
    "MetricField",
    "SpeedMeasure",
    "carne_F",
    "carne_F_numeric",
    "certify_feasible",
    "chemical_edge_weight",
    "duality_gap",
    "export_environment_csv",
    "gen_constant",
    "gen_iid",
    "gen_layered",
    "greedy_path_layered",
    "heat_kernel_field",
    "import_environment_csv",
    "intrinsic_distance_field",
    "mu",
    "nu",
    "run_acceptance",
    "solve_cauchy",
    "speed_measure",
]
