#pragma once

#include "hkm/bounds.hpp"
#include "hkm/ring_spec.hpp"

#include <filesystem>
#include <vector>

namespace hkm {

struct PipelineOptions {
  unsigned e_max = 3;
  unsigned n_max = 12;
  EngineOptions engine;
};

inline constexpr const char* kCheckParameterIdeal = "parameter_ideal_agreement";

/// Runs every stage for one ring. Stage errors are caught and recorded in
/// BoundReport::error; the partial report is returned.
BoundReport run_pipeline(const RingSpec& spec, const PipelineOptions& options);

/// The *.ring files of a directory sorted by name, or the file itself.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& path);

/// One report per file, in input order. Unparsable files yield a report that
/// carries only the file stem and the error. Rings run concurrently when
/// `parallel` is set.
std::vector<BoundReport> run_corpus(const std::vector<std::filesystem::path>& files, const PipelineOptions& options,
                                    bool parallel = true);

}  // namespace hkm
