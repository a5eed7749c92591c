#include "twohol/gauge.hpp"

#include <algorithm>
#include <set>

#include "twohol/errors.hpp"

namespace twohol {

GaugeParam identity_gauge(const TwoComplex& c) {
    GaugeParam z;
    z.vertex_part.assign(c.n_vertices, 0);
    z.edge_part.assign(c.edges.size(), 0);
    return z;
}

void validate_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z) {
    if ((int)z.vertex_part.size() != c.n_vertices ||
        z.edge_part.size() != c.edges.size())
        throw Error("gauge", "invalid_parameter", "parameter does not cover the complex");
    for (int a : z.vertex_part)
        if (a < 0 || a >= cm.base.order)
            throw Error("gauge", "invalid_parameter", "vertex part out of range");
    for (int g : z.edge_part)
        if (g < 0 || g >= cm.fiber.order)
            throw Error("gauge", "invalid_parameter", "edge part out of range");
}

bool is_normalized_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z) {
    validate_gauge(cm, c, z);
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        int au = z.vertex_part[c.edges[e].src];
        int av = z.vertex_part[c.edges[e].dst];
        if (cm.tmap(z.edge_part[e]) != cm.base.op(cm.base.inverse(au), av)) return false;
    }
    return true;
}

GaugeParam compose_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z,
                         const GaugeParam& zp) {
    validate_gauge(cm, c, z);
    validate_gauge(cm, c, zp);
    GaugeParam out;
    out.vertex_part.resize(c.n_vertices);
    for (int v = 0; v < c.n_vertices; ++v)
        out.vertex_part[v] = cm.base.op(z.vertex_part[v], zp.vertex_part[v]);
    out.edge_part.resize(c.edges.size());
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        int au = z.vertex_part[c.edges[e].src];
        out.edge_part[e] = cm.fiber.op(cm.action(au, zp.edge_part[e]), z.edge_part[e]);
    }
    return out;
}

Decoration apply_gauge(const CrossedModule& cm, const TwoComplex& c, const GaugeParam& z,
                       const Decoration& d) {
    validate_gauge(cm, c, z);
    if (d.edge_hol.size() != c.edges.size() || d.face_hol.size() != c.faces.size())
        throw Error("gauge", "invalid_parameter", "decoration does not cover the complex");
    Decoration out = d;
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        int au = z.vertex_part[c.edges[e].src];
        int av = z.vertex_part[c.edges[e].dst];
        int h = cm.base.op(cm.tmap(z.edge_part[e]), d.edge_hol[e]);
        out.edge_hol[e] = cm.base.op(cm.base.op(cm.base.inverse(au), h), av);
    }
    for (int f = 0; f < (int)c.faces.size(); ++f) {
        const Face& fc = c.faces[f];
        // boundary word steps: slot0, slot2, then slot1 reversed
        struct Step {
            int edge;
            int dir;
        };
        Step steps[3] = {{fc.slots[0].edge, fc.slots[0].sign},
                         {fc.slots[2].edge, fc.slots[2].sign},
                         {fc.slots[1].edge, -fc.slots[1].sign}};
        int prefix = 0;   // partial old boundary holonomy
        int corr = 0;     // whiskered gamma word
        for (const Step& s : steps) {
            int h = d.edge_hol[s.edge];
            int gamma = z.edge_part[s.edge];
            int adjusted = s.dir > 0
                               ? gamma
                               : cm.action(cm.base.inverse(h), cm.fiber.inverse(gamma));
            corr = cm.fiber.op(corr, cm.action(prefix, adjusted));
            prefix = cm.base.op(prefix, s.dir > 0 ? h : cm.base.inverse(h));
        }
        int root = c.tail(fc.slots[0]);
        out.face_hol[f] = cm.action(cm.base.inverse(z.vertex_part[root]),
                                    cm.fiber.op(corr, d.face_hol[f]));
    }
    return out;
}

GaugeParam apply_secondary(const CrossedModule& cm, const TwoComplex& c,
                           const SecondaryGauge& m, const GaugeParam& z) {
    validate_gauge(cm, c, z);
    if ((int)m.vertex_part.size() != c.n_vertices)
        throw Error("gauge", "invalid_parameter", "secondary gauge does not cover vertices");
    for (int h : m.vertex_part)
        if (h < 0 || h >= cm.fiber.order)
            throw Error("gauge", "invalid_parameter", "secondary gauge out of range");
    GaugeParam out;
    out.vertex_part.resize(c.n_vertices);
    for (int v = 0; v < c.n_vertices; ++v)
        out.vertex_part[v] = cm.base.op(z.vertex_part[v], cm.tmap(m.vertex_part[v]));
    out.edge_part.resize(c.edges.size());
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        int mu = m.vertex_part[c.edges[e].src];
        int mv = m.vertex_part[c.edges[e].dst];
        out.edge_part[e] =
            cm.fiber.op(cm.fiber.op(cm.fiber.inverse(mu), z.edge_part[e]), mv);
    }
    return out;
}

namespace {

GaugeParam vertex_gauge(const TwoComplex& c, int v, int a) {
    GaugeParam z = identity_gauge(c);
    z.vertex_part[v] = a;
    return z;
}

GaugeParam edge_gauge(const TwoComplex& c, int e, int gamma) {
    GaugeParam z = identity_gauge(c);
    z.edge_part[e] = gamma;
    return z;
}

}  // namespace

OrbitCensus orbit_count(const CrossedModule& cm, const TwoComplex& c,
                        const std::map<int, int>& fixed) {
    std::vector<Decoration> states;
    std::map<Decoration, int> index;
    enumerate_fake_flat(cm, c, fixed, [&](const Decoration& d) {
        index[d] = (int)states.size();
        states.push_back(d);
    });

    std::set<int> frozen_vertices;
    for (auto [e, g] : fixed) {
        frozen_vertices.insert(c.edges[e].src);
        frozen_vertices.insert(c.edges[e].dst);
    }
    std::vector<GaugeParam> gens;
    for (int v = 0; v < c.n_vertices; ++v) {
        if (frozen_vertices.count(v)) continue;
        for (int a = 1; a < cm.base.order; ++a) gens.push_back(vertex_gauge(c, v, a));
    }
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        if (fixed.count(e)) continue;
        for (int g = 1; g < cm.fiber.order; ++g) gens.push_back(edge_gauge(c, e, g));
    }

    OrbitCensus census;
    std::vector<char> seen(states.size(), 0);
    for (int s = 0; s < (int)states.size(); ++s) {
        if (seen[s]) continue;
        unsigned long long size = 0;
        std::vector<int> stack = {s};
        seen[s] = 1;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            ++size;
            for (const GaugeParam& z : gens) {
                auto img = apply_gauge(cm, c, z, states[cur]);
                auto it = index.find(img);
                if (it == index.end())
                    throw Error("gauge", "invalid_parameter",
                                "gauge image escaped the enumerated state set");
                if (!seen[it->second]) {
                    seen[it->second] = 1;
                    stack.push_back(it->second);
                }
            }
        }
        ++census.orbits;
        census.sizes.push_back(size);
    }
    std::sort(census.sizes.begin(), census.sizes.end());
    return census;
}

bool check_internal_invariance(const CrossedModule& cm, const TwoComplex& c,
                               const Decoration& d) {
    auto reference = total_surface_holonomy(cm, c, d);

    std::vector<int> interior_vertices, interior_edges;
    {
        std::vector<char> on_boundary(c.n_vertices, 0);
        for (int e = 0; e < (int)c.edges.size(); ++e) {
            if (c.edge_is_boundary(e)) {
                on_boundary[c.edges[e].src] = 1;
                on_boundary[c.edges[e].dst] = 1;
            } else {
                interior_edges.push_back(e);
            }
        }
        for (int v = 0; v < c.n_vertices; ++v)
            if (!on_boundary[v]) interior_vertices.push_back(v);
    }

    // Interior-supported parameters that fix every decoration outside the
    // glued-edge tree: a free on interior vertices, gamma_e in ker t on
    // interior edges (so edges transform by pure conjugation), identity
    // elsewhere.  This class is closed under compose_gauge since the action
    // preserves ker t.
    std::vector<int> kernel = cm.kernel_t();
    std::vector<int> assign(interior_vertices.size(), 0);
    for (;;) {
        GaugeParam z = identity_gauge(c);
        for (size_t i = 0; i < interior_vertices.size(); ++i)
            z.vertex_part[interior_vertices[i]] = assign[i];
        std::vector<int> pick(interior_edges.size(), 0);
        for (;;) {
            for (size_t i = 0; i < interior_edges.size(); ++i)
                z.edge_part[interior_edges[i]] = kernel[pick[i]];
            if (!(total_surface_holonomy(cm, c, apply_gauge(cm, c, z, d)) ==
                  reference))
                return false;
            int i = (int)pick.size() - 1;
            while (i >= 0 && ++pick[i] == (int)kernel.size()) pick[i--] = 0;
            if (i < 0) break;
        }
        int i = (int)assign.size() - 1;
        while (i >= 0 && ++assign[i] == cm.base.order) assign[i--] = 0;
        if (i < 0) break;
    }
    return true;
}

}  // namespace twohol
