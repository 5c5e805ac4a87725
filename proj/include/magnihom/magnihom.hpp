#pragma once

// Umbrella header: the whole toolkit.

#include "magnihom/abelian.hpp"
#include "magnihom/chain_complex.hpp"
#include "magnihom/corpus.hpp"
#include "magnihom/gamma_cycles.hpp"
#include "magnihom/geodesics.hpp"
#include "magnihom/graph_chains.hpp"
#include "magnihom/io.hpp"
#include "magnihom/matrix.hpp"
#include "magnihom/metric_graph.hpp"
#include "magnihom/metric_space.hpp"
#include "magnihom/nu_invariant.hpp"
#include "magnihom/rational.hpp"
#include "magnihom/simplicial.hpp"
#include "magnihom/spectral.hpp"
