#pragma once

#include <string>

#include "rcm/environment.hpp"
#include "rcm/heat.hpp"
#include "rcm/metric.hpp"

namespace rcm {

// Edge CSV: edge_id, tail, head, omega. Full round-trip precision.
void export_environment_csv(const Environment& env, const std::string& path);
Environment import_environment_csv(const LatticeGraph& g, const std::string& path);

// Metric CSV: vertex, graph_dist, intrinsic_dist.
void export_metric_csv(const LatticeGraph& g, const MetricField& field,
                       const std::string& path);

// Heat kernel CSV: t, y, probability, density.
void export_heat_kernel_csv(const HeatKernelField& field, const std::string& path);

// FNV-1a hash of a config string, recorded in outputs for provenance.
std::uint64_t config_hash(const std::string& text);

}  // namespace rcm
