#pragma once

#include <string>

#include "schelling/dynamics.hpp"
#include "schelling/game.hpp"
#include "schelling/instances.hpp"

namespace schelling::io {

// Canonical JSON document for a game instance. Writing is deterministic:
// keys sorted, edge lists canonical, rationals reduced "p/q" strings; a
// read of a written document reproduces the instance exactly.
std::string instance_to_json(const GameInstance& instance);
GameInstance instance_from_json(const std::string& text);

GameInstance read_instance_file(const std::string& path);
void write_instance_file(const GameInstance& instance, const std::string& path);

// Assignment as a JSON object {"node_of": [...]}.
std::string assignment_to_json(const Assignment& assignment);
Assignment assignment_from_json(const std::string& text);
Assignment read_assignment_file(const std::string& path);

// External graphs in a minimal edge-list format: first line the vertex
// count, then one "u v" pair per line, 0-indexed. '#' starts a comment.
instances::ExternalGraph read_external_graph(const std::string& path);
void write_external_graph(const instances::ExternalGraph& graph, const std::string& path);

// Plain-text dynamics trace, one step per line with a stable field order,
// closed by an outcome line.
std::string trace_to_text(const dynamics::DynamicsTrace& trace);

}  // namespace schelling::io
