#include "twohol/holonomy.hpp"

#include <algorithm>

#include "twohol/errors.hpp"

namespace twohol {

namespace {

void check_total(const TwoComplex& c, const Decoration& d) {
    if (d.edge_hol.size() != c.edges.size() || d.face_hol.size() != c.faces.size())
        throw Error("holonomy", "incomplete", "decoration does not cover the complex");
}

int signed_hol(const CrossedModule& cm, EdgeRef r, const std::vector<int>& edge_hol) {
    int h = edge_hol[r.edge];
    return r.sign > 0 ? h : cm.base.inverse(h);
}

}  // namespace

int face_word(const CrossedModule& cm, const TwoComplex& c, int f,
              const std::vector<int>& edge_hol) {
    const Face& fc = c.faces[f];
    int w = signed_hol(cm, fc.slots[0], edge_hol);
    w = cm.base.op(w, signed_hol(cm, fc.slots[2], edge_hol));
    w = cm.base.op(w, cm.base.inverse(signed_hol(cm, fc.slots[1], edge_hol)));
    return w;
}

bool is_fake_flat(const CrossedModule& cm, const TwoComplex& c, const Decoration& d) {
    check_total(c, d);
    for (int f = 0; f < (int)c.faces.size(); ++f)
        if (cm.tmap(d.face_hol[f]) != face_word(cm, c, f, d.edge_hol)) return false;
    return true;
}

namespace {

struct EnumCore {
    const CrossedModule& cm;
    const TwoComplex& c;
    std::vector<std::vector<int>> fiber_of;  // fiber_of[g] = {h : t(h) = g}
    std::vector<std::vector<int>> faces_touching;  // per edge
    std::vector<int> missing;                      // undecorated edges per face

    EnumCore(const CrossedModule& cm_, const TwoComplex& c_) : cm(cm_), c(c_) {
        fiber_of.assign(cm.base.order, {});
        for (int h = 0; h < cm.fiber.order; ++h) fiber_of[cm.tmap(h)].push_back(h);
        faces_touching.assign(c.edges.size(), {});
        missing.assign(c.faces.size(), 0);
        for (int f = 0; f < (int)c.faces.size(); ++f) {
            std::vector<int> seen;
            for (auto s : c.faces[f].slots) {
                if (std::find(seen.begin(), seen.end(), s.edge) == seen.end()) {
                    faces_touching[s.edge].push_back(f);
                    seen.push_back(s.edge);
                }
            }
            missing[f] = (int)seen.size();
        }
    }
};

}  // namespace

static void run_enumeration(const CrossedModule& cm, const TwoComplex& c,
                            const std::map<int, int>& fixed, const EnumOptions& opts,
                            unsigned long long* count,
                            const std::function<void(const Decoration&)>* sink) {
    for (auto [e, g] : fixed) {
        if (e < 0 || e >= (int)c.edges.size() || g < 0 || g >= cm.base.order)
            throw Error("holonomy", "domain", "fixed decoration out of range");
        if (!opts.allow_interior_fixed && !c.edge_is_boundary(e))
            throw Error("holonomy", "domain",
                        "fixed decoration touches a non-boundary edge");
    }

    EnumCore core(cm, c);
    Decoration d;
    d.edge_hol.assign(c.edges.size(), -1);
    d.face_hol.assign(c.faces.size(), 0);
    std::vector<int> missing = core.missing;

    // every nonempty fiber is a ker(t)-coset, so all have the same size
    unsigned long long ker_size = core.fiber_of[0].size();

    auto emit_faces = [&](auto&& self, int f) -> void {
        if (f == (int)c.faces.size()) {
            (*sink)(d);
            return;
        }
        for (int b : core.fiber_of[face_word(cm, c, f, d.edge_hol)]) {
            d.face_hol[f] = b;
            self(self, f + 1);
        }
    };

    auto place = [&](auto&& self, int e) -> void {
        if (e == (int)c.edges.size()) {
            if (count) {
                unsigned long long add = 1;
                for (size_t f = 0; f < c.faces.size(); ++f) add *= ker_size;
                *count += add;
            }
            if (sink) emit_faces(emit_faces, 0);
            return;
        }
        auto it = fixed.find(e);
        int lo = it == fixed.end() ? 0 : it->second;
        int hi = it == fixed.end() ? cm.base.order - 1 : it->second;
        for (int g = lo; g <= hi; ++g) {
            d.edge_hol[e] = g;
            bool ok = true;
            for (int f : core.faces_touching[e]) {
                if (--missing[f] == 0 &&
                    core.fiber_of[face_word(cm, c, f, d.edge_hol)].empty())
                    ok = false;
            }
            if (ok) self(self, e + 1);
            for (int f : core.faces_touching[e]) ++missing[f];
        }
        d.edge_hol[e] = -1;
    };
    place(place, 0);
}

unsigned long long count_fake_flat(const CrossedModule& cm, const TwoComplex& c,
                                   const std::map<int, int>& fixed, const EnumOptions& opts) {
    unsigned long long n = 0;
    run_enumeration(cm, c, fixed, opts, &n, nullptr);
    return n;
}

void enumerate_fake_flat(const CrossedModule& cm, const TwoComplex& c,
                         const std::map<int, int>& fixed,
                         const std::function<void(const Decoration&)>& sink,
                         const EnumOptions& opts) {
    run_enumeration(cm, c, fixed, opts, nullptr, &sink);
}

int path_holonomy(const CrossedModule& cm, const TwoComplex& c,
                  const std::vector<EdgeRef>& p, const std::vector<int>& edge_hol,
                  int start_vertex) {
    int at = start_vertex;
    int a = 0;
    for (auto r : p) {
        if (r.edge < 0 || r.edge >= (int)c.edges.size() || c.tail(r) != at)
            throw Error("holonomy", "path", "edges do not chain from the start vertex");
        at = c.head(r);
        a = cm.base.op(a, signed_hol(cm, r, edge_hol));
    }
    return a;
}

Decoration whisker_decoration(const CrossedModule& cm, const TwoComplex& c,
                              const std::vector<EdgeRef>& p, const Decoration& d) {
    check_total(c, d);
    int a = path_holonomy(cm, c, p, d.edge_hol, c.root);
    Decoration out = d;
    for (auto& h : out.edge_hol) h = cm.base.op(cm.base.op(a, h), cm.base.inverse(a));
    for (auto& b : out.face_hol) b = cm.action(a, b);
    return out;
}

namespace {

// Re-derive the source chain of an already-unbroken complex; throws when the
// complex is not disc-like or not unbroken as stored.
struct ChainInfo {
    std::vector<int> face_order;
    std::vector<EdgeRef> chain;          // distinct sources in order
    std::vector<int> prefix_len;         // per face (by order index): chain prefix
};

ChainInfo source_chain(const TwoComplex& c) {
    // Collect the distinct stored source edges; each must be used with one
    // consistent sign.
    std::vector<EdgeRef> sources;
    for (const Face& f : c.faces) {
        EdgeRef s = f.slots[0];
        bool seen = false;
        for (auto r : sources) {
            if (r.edge != s.edge) continue;
            if (r.sign != s.sign)
                throw Error("holonomy", "geometry",
                            "a source edge is traversed in both directions");
            seen = true;
        }
        if (!seen) sources.push_back(s);
    }
    // They must chain head-to-tail starting at the root, with at most one
    // outgoing source edge per vertex.
    std::vector<int> out_of(c.n_vertices, -1);
    for (int i = 0; i < (int)sources.size(); ++i) {
        int u = c.tail(sources[i]);
        if (out_of[u] != -1)
            throw Error("holonomy", "geometry",
                        "source edges branch instead of forming a chain");
        out_of[u] = i;
    }
    ChainInfo info;
    std::vector<char> used(sources.size(), 0);
    int at = c.root;
    while (out_of[at] != -1 && !used[out_of[at]]) {
        int i = out_of[at];
        used[i] = 1;
        info.chain.push_back(sources[i]);
        at = c.head(sources[i]);
    }
    if ((int)info.chain.size() != (int)sources.size())
        throw Error("holonomy", "geometry",
                    "source edges do not chain from the root");
    std::vector<int> pos(c.edges.size(), -1);
    for (int i = 0; i < (int)info.chain.size(); ++i) pos[info.chain[i].edge] = i;
    // Faces in chain order; ties (shared source edge) keep face-index order.
    std::vector<int> order(c.faces.size());
    for (int f = 0; f < (int)order.size(); ++f) order[f] = f;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return pos[c.faces[a].slots[0].edge] < pos[c.faces[b].slots[0].edge];
    });
    info.face_order = order;
    for (int f : info.face_order)
        info.prefix_len.push_back(pos[c.faces[f].slots[0].edge]);
    return info;
}

}  // namespace

TwoGroupElement total_surface_holonomy(const CrossedModule& cm, const TwoComplex& c,
                                       const Decoration& d) {
    check_total(c, d);
    if (!c.is_connected() || c.euler_characteristic() != 1 || !is_regular(c))
        throw Error("holonomy", "geometry",
                    "total surface holonomy needs a regular disc-like complex");
    if (!is_fake_flat(cm, c, d))
        throw Error("holonomy", "fake_flat", "decoration is not fake-flat");
    ChainInfo info = source_chain(c);

    // Faces glued along a common source edge stack vertically: their fiber
    // parts multiply at the shared source, so each chain edge contributes one
    // arrow.  Those arrows then compose horizontally in chain order; the
    // horizontal product itself whiskers each arrow by the accumulated chain
    // prefix, so sources concatenate to the full chain product.
    TwoGroupElement acc = identity_arrow(0);
    int j = 0;
    while (j < (int)info.face_order.size()) {
        int pos = info.prefix_len[j];
        int f = info.face_order[j];
        TwoGroupElement arrow{d.face_hol[f], signed_hol(cm, c.faces[f].slots[0], d.edge_hol)};
        ++j;
        while (j < (int)info.face_order.size() && info.prefix_len[j] == pos) {
            arrow.h = cm.fiber.op(d.face_hol[info.face_order[j]], arrow.h);
            ++j;
        }
        acc = horizontal_mult(cm, acc, arrow);
    }
    return acc;
}

bool check_two_flat(const CrossedModule& cm, const TwoComplex& c, const Decoration& d) {
    check_total(c, d);
    if (!c.is_closed() || !c.is_connected())
        throw Error("holonomy", "geometry", "2-flatness needs a closed connected complex");
    if (c.euler_characteristic() != 2)
        throw Error("holonomy", "geometry", "2-flatness needs a sphere-like complex");
    if (!is_fake_flat(cm, c, d))
        throw Error("holonomy", "fake_flat", "decoration is not fake-flat");
    ChainInfo info = source_chain(c);
    std::vector<int> pre(info.chain.size() + 1, 0);
    for (int i = 0; i < (int)info.chain.size(); ++i)
        pre[i + 1] = cm.base.op(pre[i], signed_hol(cm, info.chain[i], d.edge_hol));

    int b = 0;
    for (int j = (int)info.face_order.size() - 1; j >= 0; --j) {
        int f = info.face_order[j];
        b = cm.fiber.op(b, cm.action(pre[info.prefix_len[j]], d.face_hol[f]));
    }
    return b == 0;
}

}  // namespace twohol
