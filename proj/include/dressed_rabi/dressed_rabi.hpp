#pragma once

#include "dressed_rabi/dressed.hpp"
#include "dressed_rabi/elliptic.hpp"
#include "dressed_rabi/hamiltonian.hpp"
#include "dressed_rabi/hermite.hpp"
#include "dressed_rabi/linalg.hpp"
#include "dressed_rabi/model.hpp"
#include "dressed_rabi/resonance.hpp"
