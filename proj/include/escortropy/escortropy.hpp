#pragma once

#include "escortropy/prob_core.hpp"
#include "escortropy/q_calculus.hpp"
#include "escortropy/escort.hpp"
#include "escortropy/entropies.hpp"
#include "escortropy/chain_rules.hpp"
#include "escortropy/axioms.hpp"
#include "escortropy/io.hpp"
#include "escortropy/verify.hpp"
