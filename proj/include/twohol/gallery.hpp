#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twohol/polyhedron.hpp"
#include "twohol/ribbon.hpp"

namespace twohol {

// One named builder output: either a stratified polyhedron or a ribbon.
struct GalleryEntry {
    std::string name;
    std::optional<SimplePolyhedron> polyhedron;
    std::optional<Ribbon> ribbon;

    // listing data: (n, m) strand signature (0,0 for bare polyhedra) and
    // body cell counts
    int in_strands = 0, out_strands = 0;
    int vertices = 0, edges = 0, faces = 0;
};

// All builtin builders, sorted by name; stable across runs.
std::vector<GalleryEntry> builtin_gallery();

// Resolve one name.  When the environment variable TWOHOL_GALLERY_DIR is set,
// <dir>/<name>.json is consulted first and may shadow a builtin; the file
// must hold either a ribbon or a complex in the json_io schema.
std::optional<GalleryEntry> gallery_lookup(const std::string& name);

// One line per entry: name, signature, cell counts.  Deterministic.
std::string gallery_listing();

}  // namespace twohol
