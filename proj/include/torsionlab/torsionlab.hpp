#pragma once

#include "torsionlab/bitset.hpp"
#include "torsionlab/builtin.hpp"
#include "torsionlab/classify.hpp"
#include "torsionlab/corpus.hpp"
#include "torsionlab/delta.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/ideal.hpp"
#include "torsionlab/lattice.hpp"
#include "torsionlab/module.hpp"
#include "torsionlab/quasiidentity.hpp"
#include "torsionlab/ring.hpp"
#include "torsionlab/ring_spec.hpp"
#include "torsionlab/torsion.hpp"
