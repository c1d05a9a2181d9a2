#pragma once

#include <filesystem>
#include <string>

namespace fixture {

// Writes `dir`/edges.csv and a dataset cache `dir`/<id> with four daily
// snapshots: snapshot 0 has 150 nodes, snapshots 1-3 have under 100. The
// census is computed with `nulls` null models.
std::filesystem::path writeApiDataset(const std::filesystem::path& dir, const std::string& id = "fixture",
                                      std::size_t nulls = 10);

}  // namespace fixture
