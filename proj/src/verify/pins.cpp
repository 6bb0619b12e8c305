#include <algorithm>
#include <iterator>

#include "weightlab/verify.hpp"

namespace weightlab {

namespace {

struct PinEntry {
  const char* key;
  double bound;
};

// Recorded from the first verified run (`weightlab verify run --print-pins`).
constexpr PinEntry kPins[] = {
    {"theorem1/var/p=1.5/g1=-1/g2=-0.5", 2.5320082537189283},
    {"theorem1/var/p=1.5/g1=0/g2=-0.5", 2.5389409814147053},
    {"theorem1/var/p=1.5/g1=1/g2=-0.5", 2.5710229572821777},
    {"theorem1/var/p=1.5/g1=-1/g2=0", 2.4343438554553147},
    {"theorem1/var/p=1.5/g1=0/g2=0", 2.5177760180875106},
    {"theorem1/var/p=1.5/g1=1/g2=0", 2.8157453450281555},
    {"theorem1/var/p=1.5/g1=-1/g2=0.2", 2.7856888896210843},
    {"theorem1/var/p=1.5/g1=0/g2=0.2", 3.0176576503235015},
    {"theorem1/var/p=1.5/g1=1/g2=0.2", 3.7439797079254884},
    {"theorem1/var/p=2/g1=-1/g2=-0.5", 1.9638537223313832},
    {"theorem1/var/p=2/g1=0/g2=-0.5", 1.9580151992024213},
    {"theorem1/var/p=2/g1=1/g2=-0.5", 1.9546444693786371},
    {"theorem1/var/p=2/g1=-1/g2=0", 1.8792050012353463},
    {"theorem1/var/p=2/g1=0/g2=0", 1.9855617151530771},
    {"theorem1/var/p=2/g1=1/g2=0", 1.9281458111298602},
    {"theorem1/var/p=2/g1=-1/g2=0.4", 2.2114279036306783},
    {"theorem1/var/p=2/g1=0/g2=0.4", 2.2711588162328344},
    {"theorem1/var/p=2/g1=1/g2=0.4", 2.3776793054058722},
    {"theorem1/var/p=3/g1=-1/g2=-0.5", 1.6246960650768354},
    {"theorem1/var/p=3/g1=0/g2=-0.5", 1.620587468196834},
    {"theorem1/var/p=3/g1=1/g2=-0.5", 1.6170139722925887},
    {"theorem1/var/p=3/g1=-1/g2=0", 1.5804593866580003},
    {"theorem1/var/p=3/g1=0/g2=0", 1.5849294275072552},
    {"theorem1/var/p=3/g1=1/g2=0", 1.5944141272981753},
    {"theorem1/var/p=3/g1=-1/g2=0.8", 1.9120202909389163},
    {"theorem1/var/p=3/g1=0/g2=0.8", 1.9303489182349942},
    {"theorem1/var/p=3/g1=1/g2=0.8", 1.9499840846196099},
    {"theorem1/riesz-plancherel", 0.99445002745380062},
    {"theorem1/identity", 1.0000000000000002},
    {"theorem2/sign-riesz/p=1.5/g1=-1/g2=-0.5", 1.3484233263063035},
    {"theorem2/sign-riesz/p=1.5/g1=0/g2=-0.5", 1.3656071040072213},
    {"theorem2/sign-riesz/p=1.5/g1=1/g2=-0.5", 1.4014235210727588},
    {"theorem2/sign-riesz/p=1.5/g1=-1/g2=0", 1.5491656312495554},
    {"theorem2/sign-riesz/p=1.5/g1=0/g2=0", 1.6521507710548937},
    {"theorem2/sign-riesz/p=1.5/g1=1/g2=0", 2.0252426618691972},
    {"theorem2/sign-riesz/p=1.5/g1=-1/g2=0.2", 1.7349764311445035},
    {"theorem2/sign-riesz/p=1.5/g1=0/g2=0.2", 1.9714516353870071},
    {"theorem2/sign-riesz/p=1.5/g1=1/g2=0.2", 2.9728501291127807},
    {"theorem2/sign-riesz/p=2/g1=-1/g2=-0.5", 1.2785713863963688},
    {"theorem2/sign-riesz/p=2/g1=0/g2=-0.5", 1.2821107068200377},
    {"theorem2/sign-riesz/p=2/g1=1/g2=-0.5", 1.2869627265982713},
    {"theorem2/sign-riesz/p=2/g1=-1/g2=0", 1.3323914253115503},
    {"theorem2/sign-riesz/p=2/g1=0/g2=0", 1.3459022309694726},
    {"theorem2/sign-riesz/p=2/g1=1/g2=0", 1.3736754280626911},
    {"theorem2/sign-riesz/p=2/g1=-1/g2=0.4", 1.4434693721993119},
    {"theorem2/sign-riesz/p=2/g1=0/g2=0.4", 1.4951329969931755},
    {"theorem2/sign-riesz/p=2/g1=1/g2=0.4", 1.6628122387817399},
    {"theorem2/sign-riesz/p=3/g1=-1/g2=-0.5", 1.2502918576142545},
    {"theorem2/sign-riesz/p=3/g1=0/g2=-0.5", 1.2507088110501821},
    {"theorem2/sign-riesz/p=3/g1=1/g2=-0.5", 1.2511681496526421},
    {"theorem2/sign-riesz/p=3/g1=-1/g2=0", 1.2579920107153773},
    {"theorem2/sign-riesz/p=3/g1=0/g2=0", 1.2590701954826995},
    {"theorem2/sign-riesz/p=3/g1=1/g2=0", 1.2603087316322579},
    {"theorem2/sign-riesz/p=3/g1=-1/g2=0.8", 1.2999627486254512},
    {"theorem2/sign-riesz/p=3/g1=0/g2=0.8", 1.306144931298417},
    {"theorem2/sign-riesz/p=3/g1=1/g2=0.8", 1.3160740794479622},
    {"theorem2/llogl-sign-riesz", 0.65729503324193039},
    {"weak/T-var", 2.4387966684735916},
    {"weak/M_omega", 0.82057910580739613},
    {"weak/M_phi", 1.4923535968147246},
    {"weak/orlicz", 1.3678396442442025},
    {"pointwise/lemma31", 1.9717279746997898},
    {"pointwise/eq31-var", 39.291248275661559},
    {"pointwise/lemma41", 1.0000000000002991},
    {"pointwise/lemma41#lower", 2.0176759286153931},
    {"pointwise/lemma42-sign-riesz", 0.39083787253313024},
    {"maximal/prop21", 1.2869003768511795},
    {"maximal/lemma22-lp", 0.63945337302832028},
    {"maximal/lemma23", 1.3639722867381325},
    {"maximal/prop22", 1.5795440144321022},
    {"maximal/prop23a", 2.9264089719819277},
    {"oracle/a1-example", 1.3705279052147816},
    {"oracle/kernel-decay", 3.1876107670588456},
    {"2d/strong-var", 1.203362464752179},
    {"2d/weak-M_phi", 0.71494546196719644},
};

constexpr const char* kProvenance = "regression pin: constant recorded at the first verified run, checked with 5% slack";

}  // namespace

std::optional<Pin> find_pin(const std::string& key) {
  for (const auto& e : kPins) {
    if (key == e.key) return Pin{e.bound, kProvenance};
  }
  return std::nullopt;
}

}  // namespace weightlab
