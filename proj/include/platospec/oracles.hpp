#pragma once

#include <vector>

#include "platospec/graph.hpp"
#include "platospec/rootfind.hpp"

namespace platospec {

/// Couplings for which per-sector secular functions are tabulated.
enum class OracleCoupling { Delta, PreferredOrientation };

/// Order of the rotation used for the sector decomposition: 3, 4, 4, 5, 5.
int sector_count(Solid solid);

/// omega_j = exp(2 pi i j / p)
Complex sector_phase(Solid solid, int branch);

/// Closed-form secular function of sector `branch`; its zeros in k > 0 (with
/// their orders) are the eigenvalues of that sector. alpha is ignored for PO.
/// Throws std::out_of_range for a bad branch.
Complex closed_form(Solid solid, OracleCoupling coupling, int branch, double k, double alpha = 0.0);

/// False for the dodecahedron and icosahedron PO forms, which keep only the
/// leading terms in 1/k and are accurate only asymptotically.
bool closed_form_is_exact(Solid solid, OracleCoupling coupling);

/// One end of an edge of a reduced sector graph, carrying the phase omega^power.
struct TwistedEnd {
  int edge = 0;
  EndSide end = EndSide::Zero;
  int power = 0;
};

/// Reduced (quotient) graph of one fundamental domain of the rotation; each
/// vertex lists its coupled ends in the coupling order of the full graph.
struct ComponentOperator {
  Solid solid = Solid::Tetrahedron;
  int edge_count = 0;
  std::vector<std::vector<TwistedEnd>> vertices;
};

const ComponentOperator& component_operator(Solid solid);

/// Square secular matrix of one sector of the reduced graph; rows are scaled smoothly in k.
CMatrix assemble_component(Solid solid, OracleCoupling coupling, int branch, double k, double alpha = 0.0);

enum class OracleRoute { ClosedForm, ComponentOperator };

/// Union over all sectors of the sector spectra in [opts.k_min, opts.k_max].
/// Entries carry their sector; coincident roots of different sectors are merged with summed multiplicity.
Spectrum oracle_union_spectrum(Solid solid, OracleCoupling coupling, double alpha, const RootfindOptions& opts,
                               OracleRoute route = OracleRoute::ClosedForm);

/// Spectrum of a single sector.
Spectrum oracle_sector_spectrum(Solid solid, OracleCoupling coupling, int branch, double alpha,
                                const RootfindOptions& opts, OracleRoute route = OracleRoute::ClosedForm);

}  // namespace platospec
