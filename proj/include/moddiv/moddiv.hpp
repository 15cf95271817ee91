#pragma once

#include "moddiv/bench.hpp"
#include "moddiv/entropy.hpp"
#include "moddiv/errors.hpp"
#include "moddiv/hardness/anf.hpp"
#include "moddiv/hardness/bruteforce.hpp"
#include "moddiv/hardness/circuit.hpp"
#include "moddiv/hardness/cnf.hpp"
#include "moddiv/hardness/instance.hpp"
#include "moddiv/keys.hpp"
#include "moddiv/kex.hpp"
#include "moddiv/nat.hpp"
#include "moddiv/params.hpp"
#include "moddiv/pke.hpp"
#include "moddiv/sig.hpp"
