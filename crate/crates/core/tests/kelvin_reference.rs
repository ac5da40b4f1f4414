#![allow(clippy::excessive_precision)]

use kelvin_core::kelvin::kelvin_all;
use kelvin_core::orderderiv::dkelvin;
use kelvin_core::SeriesConfig;

// mpmath ber/bei/ker/kei at 40 digits and their order derivatives by
// numerical differentiation of the same routines.
// nu, x, [ber, bei, ker, kei], [dber, dbei, dker, dkei]
type Row = (f64, f64, [f64; 4], [f64; 4]);
const REFERENCE: &[Row] = &[
    (
        -5.29999999999999982e+00,
        5.00000000000000000e-01,
        [
            -1.51878220446137129e+04,
            -9.73429250284538739e+02,
            -1.58040478880359005e+04,
            -2.49679015373758157e+04,
        ],
        [
            8.18627996557894949e+04,
            -3.06341102436811561e+04,
            2.70341694202347571e+04,
            8.62892252407817869e+04,
        ],
    ),
    (
        -5.29999999999999982e+00,
        2.00000000000000000e+00,
        [
            -9.61769058462765258e+00,
            1.48661537823790479e+00,
            -1.33017560738677858e+01,
            -1.34100611664925609e+01,
        ],
        [
            3.36752821087089416e+01,
            -2.78638499702113798e+01,
            9.72642417133711312e+00,
            3.22867514661470665e+01,
        ],
    ),
    (
        -5.29999999999999982e+00,
        7.00000000000000000e+00,
        [
            -3.13348506093326362e+00,
            -3.59952662243455945e+00,
            -2.70489919794962650e-03,
            1.36740959143097345e-02,
        ],
        [
            1.87468091094390288e+00,
            -5.45682238581148660e+00,
            1.69510720166106445e-02,
            -4.46380984013300224e-03,
        ],
    ),
    (
        -5.29999999999999982e+00,
        1.00000000000000000e+01,
        [
            4.42330480863252404e+01,
            -3.10688006977999258e+01,
            9.08626067993786434e-04,
            -3.26963539620632934e-05,
        ],
        [
            5.44348269941212237e+01,
            4.02153329792242360e+01,
            -3.88300701777957421e-04,
            -1.11205200485731365e-03,
        ],
    ),
    (
        -2.70000000000000018e+00,
        5.00000000000000000e-01,
        [
            1.66683212322263579e+01,
            -1.93316072376299863e+00,
            -1.59971010295256164e+01,
            2.83877074758116130e+01,
        ],
        [
            6.12834358431766990e+00,
            3.87263649818228473e+01,
            5.78436050553461740e+01,
            -4.91200366471225891e+01,
        ],
    ),
    (
        -2.70000000000000018e+00,
        2.00000000000000000e+00,
        [
            2.32697879099800053e-01,
            -4.36199673626784856e-01,
            -2.13664931589250227e-02,
            7.03201417309957555e-01,
        ],
        [
            9.71404390693261788e-01,
            3.11984463407458286e-02,
            7.20444826545582728e-01,
            -6.13787044891729194e-01,
        ],
    ),
    (
        -2.70000000000000018e+00,
        7.00000000000000000e+00,
        [
            1.13090704093908467e+01,
            9.66713310969296735e+00,
            7.16445535041541903e-04,
            -4.73298423328325467e-03,
        ],
        [
            -9.14868013287884985e+00,
            1.71103054614657601e+01,
            -6.48590100081469518e-03,
            3.44363898402432888e-04,
        ],
    ),
    (
        -2.70000000000000018e+00,
        1.00000000000000000e+01,
        [
            -1.04809223561230155e+02,
            4.90892826430154372e+01,
            -4.10848559284752416e-04,
            1.32582777938684539e-04,
        ],
        [
            -8.73664433909792848e+01,
            -1.33857284091971621e+02,
            2.63594297526069399e-04,
            5.47566060773027976e-04,
        ],
    ),
    (
        -1.50000000000000000e+00,
        5.00000000000000000e-01,
        [
            1.99340097504817249e+00,
            -1.13076587773329651e+00,
            1.64118523705100561e+00,
            3.07130409816056682e+00,
        ],
        [
            -3.87842318158028165e-01,
            5.78428172238072147e+00,
            3.28394500353487162e-01,
            -5.99776103896569523e+00,
        ],
    ),
    (
        -1.50000000000000000e+00,
        2.00000000000000000e+00,
        [
            6.02105336555607495e-01,
            -7.25143891607332836e-01,
            2.88502108224845455e-01,
            8.72837537186468143e-02,
        ],
        [
            1.23549827759534359e+00,
            3.21222349775454830e-01,
            -4.10064701148747032e-02,
            -3.90181072796713102e-01,
        ],
    ),
    (
        -1.50000000000000000e+00,
        7.00000000000000000e+00,
        [
            -1.30095254782743606e+01,
            1.41931106026929363e+01,
            -3.70331446288335066e-03,
            -2.36776108455589030e-04,
        ],
        [
            -2.18890814734186705e+01,
            -1.61113713447597640e+01,
            2.19319558517412432e-04,
            5.34638555965796184e-03,
        ],
    ),
    (
        -1.50000000000000000e+00,
        1.00000000000000000e+01,
        [
            -4.27926919138804465e+01,
            -1.31653146620322985e+02,
            1.60720546765184797e-04,
            3.23475674394888989e-04,
        ],
        [
            1.87290515017928982e+02,
            -7.62970482024032890e+01,
            4.59156996932834794e-04,
            -2.70831803588860299e-04,
        ],
    ),
    (
        -1.00000000000000000e+00,
        5.00000000000000000e-01,
        [
            1.82243123755112146e-01,
            -1.71195179717015339e-01,
            1.52240340653209016e+00,
            1.05118208541252267e+00,
        ],
        [
            -2.57794442197995277e+00,
            -2.26612654493160770e+00,
            -5.09000675350321896e-01,
            -2.65205942990162180e+00,
        ],
    ),
    (
        -1.00000000000000000e+00,
        2.00000000000000000e+00,
        [
            9.97077651926428499e-01,
            -2.99775437002033518e-01,
            2.30805929518122954e-01,
            -8.00493978070667411e-02,
        ],
        [
            3.18059058144397500e-01,
            1.03672014037932891e+00,
            -1.82569900062884372e-01,
            -2.76259245885910665e-01,
        ],
    ),
    (
        -1.00000000000000000e+00,
        7.00000000000000000e+00,
        [
            -2.03689260342135725e+01,
            2.31716511219150245e+00,
            -2.74358711554345850e-03,
            2.14889692369680868e-03,
        ],
        [
            -5.41557314287951463e+00,
            -2.94850980633059478e+01,
            3.45410396504242491e-03,
            3.84268499704454010e-03,
        ],
    ),
    (
        -1.00000000000000000e+00,
        1.00000000000000000e+01,
        [
            5.94776104262633254e+01,
            -1.31878639175686942e+02,
            3.22801862589603588e-04,
            1.23519602311801909e-04,
        ],
        [
            2.01322649051179411e+02,
            7.96235916172608711e+01,
            1.63124214777152476e-04,
            -4.94465361222953164e-04,
        ],
    ),
    (
        -5.00000000000000000e-01,
        5.00000000000000000e-01,
        [
            5.60975723109299551e-01,
            -9.85804579229893174e-01,
            1.24364323425582013e+00,
            4.87081563204898801e-02,
        ],
        [
            2.38899762036980112e+00,
            6.37582645734057207e-01,
            -6.05484916477198487e-01,
            -1.58721461363922178e+00,
        ],
    ),
    (
        -5.00000000000000000e-01,
        2.00000000000000000e+00,
        [
            1.06963833282435994e+00,
            2.35628491613529834e-01,
            1.12484470168927736e-01,
            -1.83762860139939810e-01,
        ],
        [
            -1.91078761869502393e-02,
            1.26237088776348672e+00,
            -2.83224651590190890e-01,
            -1.31137393201268049e-01,
        ],
    ),
    (
        -5.00000000000000000e-01,
        7.00000000000000000e+00,
        [
            -1.71945302419718331e+01,
            -1.25389058089611307e+01,
            -5.19277878346397089e-04,
            3.31590271896428515e-03,
        ],
        [
            1.81357923464648501e+01,
            -2.66661102298000294e+01,
            5.08242999881677437e-03,
            6.25653195641099670e-04,
        ],
    ),
    (
        -5.00000000000000000e-01,
        1.00000000000000000e+01,
        [
            1.37371409357907623e+02,
            -5.65017954762005985e+01,
            3.10671254791180607e-04,
            -1.29589416172377669e-04,
        ],
        [
            9.14314081389802453e+01,
            2.08573612957991088e+02,
            -2.10217506608490303e-04,
            -4.73177341885450424e-04,
        ],
    ),
    (
        -2.99999999999999989e-01,
        5.00000000000000000e-01,
        [
            9.54155655193897778e-01,
            -6.77837849875801757e-01,
            1.11359778190370151e+00,
            -2.53344494147317412e-01,
        ],
        [
            1.34470328929304772e+00,
            2.24514346590584379e+00,
            -7.08342238716732742e-01,
            -1.44947376648919990e+00,
        ],
    ),
    (
        -2.99999999999999989e-01,
        2.00000000000000000e+00,
        [
            1.03058832040703119e+00,
            5.14707797667547484e-01,
            5.31731974572586807e-02,
            -2.02921670893930400e-01,
        ],
        [
            -4.23777603924144097e-01,
            1.51367292752626681e+00,
            -3.07939011571093935e-01,
            -5.89607891157293909e-02,
        ],
    ),
    (
        -2.99999999999999989e-01,
        7.00000000000000000e+00,
        [
            -1.27339474864561719e+01,
            -1.72624499645381739e+01,
            5.02403402379539309e-04,
            3.29139039214396438e-03,
        ],
        [
            2.61515026920512099e+01,
            -2.00878356574773740e+01,
            5.06430424264529659e-03,
            -8.74277197777011475e-04,
        ],
    ),
    (
        -2.99999999999999989e-01,
        1.00000000000000000e+01,
        [
            1.48871051672413358e+02,
            -1.22559412229755207e+01,
            2.55134507103127570e-04,
            -2.16672521520209832e-04,
        ],
        [
            2.21094127031153853e+01,
            2.30190813954157960e+02,
            -3.41442626912697280e-04,
            -3.91130233719544482e-04,
        ],
    ),
    (
        0.00000000000000000e+00,
        5.00000000000000000e-01,
        [
            9.99023463990838301e-01,
            6.24932183821994558e-02,
            8.55905872118634226e-01,
            -6.71581695094367603e-01,
        ],
        [
            -9.54069990002984425e-01,
            2.24084408271309021e+00,
            -1.05491805979692277e+00,
            -1.34445380000613324e+00,
        ],
    ),
    (
        0.00000000000000000e+00,
        2.00000000000000000e+00,
        [
            7.51734182713808208e-01,
            9.72291627306661188e-01,
            -4.16645139915095344e-02,
            -2.02400067764704289e-01,
        ],
        [
            -1.48560760275522652e+00,
            1.38322136069771795e+00,
            -3.17929282987835682e-01,
            6.54464655355577463e-02,
        ],
    ),
    (
        0.00000000000000000e+00,
        7.00000000000000000e+00,
        [
            -3.63293024250790175e+00,
            -2.12394025795722072e+01,
            1.92202156866534170e-03,
            2.70036510759567644e-03,
        ],
        [
            3.33608535337414125e+01,
            -5.70929384554110086e+00,
            4.24172359201639444e-03,
            -3.01910442008008388e-03,
        ],
    ),
    (
        0.00000000000000000e+00,
        1.00000000000000000e+01,
        [
            1.38840465941632658e+02,
            5.63704585539066372e+01,
            1.29466330214806112e-04,
            -3.07524569088144222e-04,
        ],
        [
            -8.85466387025507231e+01,
            2.18090401436177586e+02,
            -4.83058463522840304e-04,
            -2.03365235945032584e-04,
        ],
    ),
    (
        2.99999999999999989e-01,
        5.00000000000000000e-01,
        [
            5.35677776092636004e-01,
            5.03986638034367940e-01,
            4.49596351992101517e-01,
            -1.04983168786763081e+00,
        ],
        [
            -1.82137287238029288e+00,
            6.28463227683775938e-01,
            -1.70914148662676468e+00,
            -1.13353020192741383e+00,
        ],
    ),
    (
        2.99999999999999989e-01,
        2.00000000000000000e+00,
        [
            1.61971138122549901e-01,
            1.24081312740074368e+00,
            -1.32912658997537542e-01,
            -1.62292385910176112e-01,
        ],
        [
            -2.31722648230137507e+00,
            2.56193827607732572e-01,
            -2.81154277305576128e-01,
            2.03085821789462995e-01,
        ],
    ),
    (
        2.99999999999999989e-01,
        7.00000000000000000e+00,
        [
            6.48053009390618051e+00,
            -2.04502886148624512e+01,
            2.95809607298714401e-03,
            1.52817784148252009e-03,
        ],
        [
            3.26203005493997722e+01,
            1.10060025379100956e+01,
            2.53149404402719424e-03,
            -4.68213745125511949e-03,
        ],
    ),
    (
        2.99999999999999989e-01,
        1.00000000000000000e+01,
        [
            9.74193419942521643e+01,
            1.13235460863820293e+02,
            -2.53274514977936300e-05,
            -3.33765064824508798e-04,
        ],
        [
            -1.82507123461871004e+02,
            1.52862698942664622e+02,
            -5.31427928981356799e-04,
            3.32362308892798547e-05,
        ],
    ),
    (
        5.00000000000000000e-01,
        5.00000000000000000e-01,
        [
            1.94076706531470272e-01,
            5.29967147720104781e-01,
            4.87081563204898801e-02,
            -1.24364323425582013e+00,
        ],
        [
            -1.51023823452805850e+00,
            -3.02453402419491257e-01,
            -2.31980583478551328e+00,
            -7.58506102543552663e-01,
        ],
    ),
    (
        5.00000000000000000e-01,
        2.00000000000000000e+00,
        [
            -3.07238329407360566e-01,
            1.18662540301626418e+00,
            -1.83762860139939810e-01,
            -1.12484470168927736e-01,
        ],
        [
            -2.27830345385979172e+00,
            -8.04625519451228510e-01,
            -2.22242991924375577e-01,
            2.94083399828092673e-01,
        ],
    ),
    (
        5.00000000000000000e-01,
        7.00000000000000000e+00,
        [
            1.25392363915258400e+01,
            -1.71966412112059750e+01,
            3.31590271896428515e-03,
            5.19277878346397089e-04,
        ],
        [
            2.73553352357351329e+01,
            2.12567403302168145e+01,
            1.00570637214363566e-03,
            -5.33478562309984417e-03,
        ],
    ),
    (
        5.00000000000000000e-01,
        1.00000000000000000e+01,
        [
            5.65015976967370932e+01,
            1.37371491857092252e+02,
            -1.29589416172377669e-04,
            -3.10671254791180607e-04,
        ],
        [
            -2.22991531322708880e+02,
            8.60739162096328982e+01,
            -5.02825189848045526e-04,
            1.96899651221641716e-04,
        ],
    ),
    (
        1.00000000000000000e+00,
        5.00000000000000000e-01,
        [
            -1.82243123755112146e-01,
            1.71195179717015339e-01,
            -1.52240340653209016e+00,
            -1.05118208541252267e+00,
        ],
        [
            -7.09631278447324793e-02,
            -7.36296032862878147e-01,
            -3.81138659246750144e+00,
            2.13071192785966801e+00,
        ],
    ),
    (
        1.00000000000000000e+00,
        2.00000000000000000e+00,
        [
            -9.97077651926428499e-01,
            2.99775437002033518e-01,
            -2.30805929518122954e-01,
            8.00493978070667411e-02,
        ],
        [
            -1.62101393431614921e-01,
            -2.25579048158543349e+00,
            6.89127000120833971e-02,
            4.48838966693188013e-01,
        ],
    ),
    (
        1.00000000000000000e+00,
        7.00000000000000000e+00,
        [
            2.03689260342135725e+01,
            -2.31716511219150245e+00,
            2.74358711554345850e-03,
            -2.14889692369680868e-03,
        ],
        [
            1.85852857650479097e+00,
            3.45100681211406908e+01,
            -3.29685482376517510e-03,
            -4.77654812963040042e-03,
        ],
    ),
    (
        1.00000000000000000e+00,
        1.00000000000000000e+01,
        [
            -5.94776104262633254e+01,
            1.31878639175686942e+02,
            -3.22801862589603588e-04,
            -1.23519602311801909e-04,
        ],
        [
            -2.12985669344852568e+02,
            -1.07230585311759071e+02,
            -2.24924060419937272e-04,
            5.19646598853647462e-04,
        ],
    ),
    (
        2.00000000000000000e+00,
        5.00000000000000000e-01,
        [
            6.51020474002632376e-04,
            -3.12449137921685244e-02,
            4.76909294294685149e-01,
            7.95078070836377826e+00,
        ],
        [
            7.18988389283215928e-02,
            7.36779287221905888e-02,
            1.91945258590178085e+01,
            1.33773186225260456e+01,
        ],
    ),
    (
        2.00000000000000000e+00,
        2.00000000000000000e+00,
        [
            1.65279430670228045e-01,
            -4.79224502597222102e-01,
            2.61472423911115026e-01,
            3.09001033645756928e-01,
        ],
        [
            9.22159464209418411e-01,
            8.19553505012132311e-01,
            8.06385632428538890e-01,
            -3.24951214152439716e-01,
        ],
    ),
    (
        2.00000000000000000e+00,
        7.00000000000000000e+00,
        [
            -9.50352296988991707e-01,
            1.75923961337664565e+01,
            -2.91045260894926862e-03,
            -2.82051066969850371e-03,
        ],
        [
            -3.13475289223260880e+01,
            -5.28527869944859230e+00,
            -5.52909782391564682e-03,
            4.53003256529083131e-03,
        ],
    ),
    (
        2.00000000000000000e+00,
        1.00000000000000000e+01,
        [
            -1.11778605598439725e+02,
            -6.66095102326265618e+01,
            -1.01283562692282891e-04,
            3.70643955972323690e-04,
        ],
        [
            1.30564526458694360e+02,
            -1.83044036092127840e+02,
            6.16539423494341524e-04,
            2.24804561730214235e-04,
        ],
    ),
    (
        2.39999999999999991e+00,
        5.00000000000000000e-01,
        [
            9.87023196111773762e-03,
            -6.89755623667952407e-03,
            1.44097986929514068e+01,
            9.52680566192473144e+00,
        ],
        [
            -8.02554521355030269e-03,
            4.01424878470763372e-02,
            5.16003536530222320e+01,
            -1.40581582091013431e+01,
        ],
    ),
    (
        2.39999999999999991e+00,
        2.00000000000000000e+00,
        [
            3.19907215621825058e-01,
            -1.11333627645470584e-01,
            5.43918866931474176e-01,
            2.14849950669875021e-02,
        ],
        [
            -9.18973549877120793e-02,
            8.46340270608863743e-01,
            4.83897097813511923e-01,
            -1.12701437152887407e+00,
        ],
    ),
    (
        2.39999999999999991e+00,
        7.00000000000000000e+00,
        [
            -1.13215823532305748e+01,
            1.14491365572231718e+01,
            -4.42137564602036130e-03,
            -2.73925784615278894e-04,
        ],
        [
            -1.82295164905095852e+01,
            -2.36126015107401237e+01,
            -1.56343146605211563e-03,
            7.83436851767417737e-03,
        ],
    ),
    (
        2.39999999999999991e+00,
        1.00000000000000000e+01,
        [
            -4.05998058434969451e+01,
            -1.15290405612502340e+02,
            1.66459006852259144e-04,
            3.73509858828243715e-04,
        ],
        [
            2.08915239628490980e+02,
            -5.14148326121466823e+01,
            6.73666419002134161e-04,
            -2.24118820834079185e-04,
        ],
    ),
    (
        3.75000000000000000e+00,
        5.00000000000000000e-01,
        [
            -2.79347666997746091e-04,
            1.81383535790560432e-04,
            -3.37774201465223882e+02,
            -2.14756222499490775e+02,
        ],
        [
            3.65219922549899661e-04,
            -1.17173798113264318e-03,
            -1.37198416384721168e+03,
            2.41361829800301649e+02,
        ],
    ),
    (
        3.75000000000000000e+00,
        2.00000000000000000e+00,
        [
            -5.62354452866051235e-02,
            2.23752605384813785e-02,
            -2.08641787012120083e+00,
            -5.00830622895866884e-01,
        ],
        [
            2.98928042143163201e-02,
            -1.62495147373350829e-01,
            -3.65251378812669136e+00,
            4.06883617642683415e+00,
        ],
    ),
    (
        3.75000000000000000e+00,
        7.00000000000000000e+00,
        [
            2.18136428080280620e+00,
            -1.01670406684637396e+01,
            5.10734129632579945e-03,
            4.42942781843897251e-03,
        ],
        [
            1.91717473895677131e+01,
            8.41248329735850930e+00,
            1.03715129754572404e-02,
            -7.99619050340977071e-03,
        ],
    ),
    (
        3.75000000000000000e+00,
        1.00000000000000000e+01,
        [
            7.85838329873752315e+01,
            4.52325316470793055e+01,
            1.79107115228379347e-04,
            -5.19357890385881366e-04,
        ],
        [
            -1.05078399793512247e+02,
            1.33044685572572064e+02,
            -8.93445739114457987e-04,
            -4.63720036382753728e-04,
        ],
    ),
    (
        5.29999999999999982e+00,
        5.00000000000000000e-01,
        [
            3.18501866327671512e-06,
            -2.18897081384941939e-07,
            2.94888429327289195e+04,
            1.89002098302354807e+03,
        ],
        [
            -9.50269881313010036e-06,
            8.18802415496782445e-06,
            9.16374117798275984e+04,
            -6.37935007818309023e+04,
        ],
    ),
    (
        5.29999999999999982e+00,
        2.00000000000000000e+00,
        [
            4.94769336570987685e-03,
            3.97391010965688404e-04,
            1.86675434291113298e+01,
            -2.87911053278488049e+00,
        ],
        [
            -9.63364275013249560e-03,
            1.08338711071493000e-02,
            2.27925868160562395e+01,
            -4.75369833903419092e+01,
        ],
    ),
    (
        5.29999999999999982e+00,
        7.00000000000000000e+00,
        [
            -1.07165502320358597e+00,
            4.65783398441672425e+00,
            -9.47267611989707423e-03,
            -1.02257413360764410e-02,
        ],
        [
            -9.10623025319872426e+00,
            -5.03474404845867962e+00,
            -2.57728217373415606e-02,
            1.34218227807242976e-02,
        ],
    ),
    (
        5.29999999999999982e+00,
        1.00000000000000000e+01,
        [
            -5.11342531131234210e+01,
            -1.75235215980668251e+01,
            -5.07625096605838176e-04,
            7.54312365201694770e-04,
        ],
        [
            5.45140826602226838e+01,
            -9.29672500393413799e+01,
            1.24183578851138634e-03,
            1.25524537270338887e-03,
        ],
    ),
];

#[test]
fn values_match_reference() {
    let cfg = SeriesConfig::default();
    for &(nu, x, want, _) in REFERENCE {
        let q = kelvin_all(nu, x, &cfg).unwrap();
        let got = [q.ber, q.bei, q.ker, q.kei];
        for (i, (g, w)) in got.iter().zip(want).enumerate() {
            let err = (g - w).abs();
            assert!(
                err <= 1e-11 * (1.0 + w.abs()),
                "component {i} at nu={nu}, x={x}: {g} vs {w}"
            );
            assert!(
                err <= q.err_estimate.max(f64::EPSILON * w.abs() * 4.0),
                "estimate at nu={nu}, x={x}, component {i}"
            );
        }
    }
}

#[test]
fn order_derivatives_match_reference() {
    let cfg = SeriesConfig::default();
    for &(nu, x, _, want) in REFERENCE {
        let d = dkelvin(nu, x, &cfg).unwrap();
        let got = [d.dber, d.dbei, d.dker, d.dkei];
        for (i, (g, w)) in got.iter().zip(want).enumerate() {
            let err = (g - w).abs();
            // x = 10 on the K side carries O(1e9) cancellation; 1e-7 is the
            // measured worst case with margin.
            assert!(
                err <= 1e-7 * (1.0 + w.abs()),
                "component {i} at nu={nu}, x={x}: {g} vs {w} ({:?})",
                d.method_bb
            );
            assert!(
                err <= d.err_estimate + 1e-12 * w.abs(),
                "estimate at nu={nu}, x={x}, component {i}: {err:.2e} > {:.2e}",
                d.err_estimate
            );
        }
    }
}
