#pragma once

// Exact arithmetic for the group of formal power series r + c_1 r^2 + ...
// under composition: coefficient ring Q[s0, s1, ...], the truncated
// composition group, its Lie algebra with exp/log/flows, embedding chains
// (free products, amalgams over centralizers, centralizer extensions), word
// nontriviality certificates, and bounded big-powers searches.

#include "fpsg/bpcheck.hpp"
#include "fpsg/certify.hpp"
#include "fpsg/chain.hpp"
#include "fpsg/errors.hpp"
#include "fpsg/field_elem.hpp"
#include "fpsg/json_io.hpp"
#include "fpsg/lie.hpp"
#include "fpsg/rational.hpp"
#include "fpsg/series.hpp"
#include "fpsg/symbols.hpp"
#include "fpsg/word.hpp"
