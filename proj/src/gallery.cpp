#include "twohol/gallery.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "twohol/errors.hpp"
#include "twohol/json_io.hpp"

namespace twohol {

namespace {

GalleryEntry poly_entry(const std::string& name, SimplePolyhedron p) {
    GalleryEntry e;
    e.name = name;
    e.vertices = p.body.n_vertices;
    e.edges = (int)p.body.edges.size();
    e.faces = (int)p.body.faces.size();
    e.polyhedron = std::move(p);
    return e;
}

GalleryEntry ribbon_entry(const std::string& name, Ribbon r) {
    GalleryEntry e;
    e.name = name;
    auto [n, m] = ribbon_signature(r);
    e.in_strands = n;
    e.out_strands = m;
    e.vertices = r.body.n_vertices;
    e.edges = (int)r.body.edges.size();
    e.faces = (int)r.body.faces.size();
    e.ribbon = std::move(r);
    return e;
}

}  // namespace

std::vector<GalleryEntry> builtin_gallery() {
    std::vector<GalleryEntry> out;
    out.push_back(poly_entry("coordinate_planes_s3", coordinate_planes_s3()));
    out.push_back(poly_entry("gamma_plus", gamma_plus()));
    out.push_back(poly_entry("square", square()));
    out.push_back(poly_entry("torus_partition", torus_partition()));
    out.push_back(poly_entry("triangle", triangle()));
    out.push_back(poly_entry("triple_point", triple_point()));
    out.push_back(ribbon_entry("b_plus", b_plus()));
    out.push_back(ribbon_entry("b_times", b_times()));
    out.push_back(ribbon_entry("cap", cap()));
    out.push_back(ribbon_entry("cup", cup()));
    out.push_back(ribbon_entry("cusp", cusp()));
    out.push_back(ribbon_entry("fold_crossing", fold_crossing()));
    out.push_back(ribbon_entry("house", house()));
    out.push_back(ribbon_entry("reidemeister_i", reidemeister(1)));
    out.push_back(ribbon_entry("reidemeister_ii", reidemeister(2)));
    out.push_back(ribbon_entry("reidemeister_iii", reidemeister(3)));
    out.push_back(ribbon_entry("saddle", saddle()));
    std::sort(out.begin(), out.end(),
              [](const GalleryEntry& a, const GalleryEntry& b) { return a.name < b.name; });
    return out;
}

std::optional<GalleryEntry> gallery_lookup(const std::string& name) {
    if (const char* dir = std::getenv("TWOHOL_GALLERY_DIR")) {
        std::ifstream in(std::string(dir) + "/" + name + ".json");
        if (in) {
            nlohmann::json j;
            try {
                in >> j;
            } catch (const std::exception& e) {
                throw Error("json_io", "schema", std::string("unparseable gallery file: ") + e.what());
            }
            GalleryEntry e;
            if (j.contains("body"))
                e = [&] {
                    GalleryEntry g;
                    Ribbon r = ribbon_from_json(j);
                    auto [n, m] = ribbon_signature(r);
                    g.in_strands = n;
                    g.out_strands = m;
                    g.vertices = r.body.n_vertices;
                    g.edges = (int)r.body.edges.size();
                    g.faces = (int)r.body.faces.size();
                    g.ribbon = std::move(r);
                    return g;
                }();
            else
                e = poly_entry(name, stratify(complex_from_json(j)));
            e.name = name;
            return e;
        }
    }
    for (auto& entry : builtin_gallery())
        if (entry.name == name) return entry;
    return std::nullopt;
}

std::string gallery_listing() {
    std::ostringstream os;
    for (const auto& e : builtin_gallery()) {
        os << e.name;
        for (size_t pad = e.name.size(); pad < 22; ++pad) os << ' ';
        if (e.ribbon)
            os << e.in_strands << "->" << e.out_strands;
        else
            os << "-    ";
        os << "  V=" << e.vertices << " E=" << e.edges << " F=" << e.faces << "\n";
    }
    return os.str();
}

}  // namespace twohol
